"""Clifford+T circuits as plain gate lists, plus the line-oriented text format.

One gate per line: ``T q``, ``S q``, ``Sdg q``, ``Z q``, ``X q``, ``H q``,
``HSH q``, ``CNOT c t``.  ``#`` starts a comment.  An optional ``qubits n``
line pins the register size (otherwise it is inferred from the largest qubit
index used).  Phases outside the pi/4 family have no gate here and are
rejected at parse time.
"""
from __future__ import annotations

from dataclasses import dataclass, field

ONE_QUBIT_GATES = ("T", "S", "Sdg", "Z", "X", "H", "HSH")
TWO_QUBIT_GATES = ("CNOT",)


class CircuitParseError(ValueError):
    pass


@dataclass
class Circuit:
    n_qubits: int
    gates: list[tuple] = field(default_factory=list)

    def add(self, name: str, *qubits: int) -> None:
        self.gates.append((name, *qubits))

    @property
    def depth(self) -> int:
        """Total gate count (HSH counts as a single gate)."""
        return len(self.gates)

    def to_text(self) -> str:
        lines = [f"qubits {self.n_qubits}"]
        for g in self.gates:
            lines.append(" ".join(str(x) for x in g))
        return "\n".join(lines) + "\n"


def parse_circuit(text: str, n_qubits: int | None = None) -> Circuit:
    """Parse the text format.  Raises CircuitParseError on malformed input."""
    gates: list[tuple] = []
    declared = n_qubits
    max_q = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        name, args = parts[0], parts[1:]
        if name == "qubits":
            if len(args) != 1 or not args[0].isdigit():
                raise CircuitParseError(f"line {lineno}: bad qubits declaration")
            declared = int(args[0])
            continue
        try:
            qubits = [int(a) for a in args]
        except ValueError:
            raise CircuitParseError(f"line {lineno}: non-integer qubit in {line!r}") from None
        if name in ONE_QUBIT_GATES:
            if len(qubits) != 1:
                raise CircuitParseError(f"line {lineno}: {name} takes one qubit")
        elif name in TWO_QUBIT_GATES:
            if len(qubits) != 2 or qubits[0] == qubits[1]:
                raise CircuitParseError(f"line {lineno}: {name} takes two distinct qubits")
        else:
            raise CircuitParseError(f"line {lineno}: unknown gate {name!r}")
        if any(q < 0 for q in qubits):
            raise CircuitParseError(f"line {lineno}: negative qubit index")
        max_q = max(max_q, *qubits)
        gates.append((name, *qubits))
    n = declared if declared is not None else max_q + 1
    if n <= 0:
        raise CircuitParseError("empty circuit with no qubit count; add a 'qubits n' line")
    if max_q >= n:
        raise CircuitParseError(f"qubit index {max_q} out of range for {n} qubits")
    return Circuit(n, gates)
