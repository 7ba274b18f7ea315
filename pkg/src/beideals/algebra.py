"""Finite BE-algebras stored as Cayley tables over element indices.

The unit element (label ``"1"``) always lives at index 0. Tables supplied
with the unit elsewhere are reordered on construction; the remaining
elements keep their relative order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

UNIT_LABEL = "1"
AXIOMS = ("V1", "V2", "V3", "V4")


class InputError(ValueError):
    """Malformed input: bad dimensions, unknown or duplicate labels, etc."""


class PreconditionError(ValueError):
    """A checker was called outside the hypotheses it is defined for."""


class NotABEAlgebra(ValueError):
    def __init__(self, report: "AxiomReport"):
        self.report = report
        super().__init__(f"table fails axioms: {report.describe()}")


@dataclass(frozen=True)
class Verdict:
    """A decision plus, when negative, the first violation found."""

    ok: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class AxiomReport:
    names: tuple
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.witnesses.get(a) is None for a in AXIOMS)

    def flag(self, axiom: str) -> bool:
        return self.witnesses.get(axiom) is None

    def labelled(self, axiom: str) -> Optional[tuple]:
        w = self.witnesses.get(axiom)
        return None if w is None else tuple(self.names[i] for i in w)

    def describe(self) -> str:
        parts = []
        for a in AXIOMS:
            w = self.labelled(a)
            parts.append(f"{a}=pass" if w is None else f"{a}=fail{w}")
        return ", ".join(parts)


def check_axioms(table: Sequence[Sequence[int]], unit: int = 0) -> dict:
    """Return ``{axiom: first witness or None}`` for an index table."""
    n = len(table)
    out = {a: None for a in AXIOMS}
    for x in range(n):
        if table[x][x] != unit:
            out["V1"] = (x,)
            break
    for x in range(n):
        if table[x][unit] != unit:
            out["V2"] = (x,)
            break
    for y in range(n):
        if table[unit][y] != y:
            out["V3"] = (y,)
            break
    for x in range(n):
        tx = table[x]
        for y in range(n):
            ty = table[y]
            for z in range(n):
                if tx[ty[z]] != ty[tx[z]]:
                    out["V4"] = (x, y, z)
                    break
            if out["V4"]:
                break
        if out["V4"]:
            break
    return out


def _normalize(names, raw_table):
    names = [str(a) for a in names]
    if len(set(names)) != len(names):
        dup = sorted({a for a in names if names.count(a) > 1})
        raise InputError(f"duplicate element labels: {dup}")
    if UNIT_LABEL not in names:
        raise InputError('no element labelled "1"')
    n = len(names)
    if len(raw_table) != n or any(len(row) != n for row in raw_table):
        raise InputError(f"table must be {n}x{n}")
    order = [names.index(UNIT_LABEL)] + [i for i in range(n) if names[i] != UNIT_LABEL]
    new_names = tuple(names[i] for i in order)
    index = {a: i for i, a in enumerate(new_names)}
    table = []
    for i in order:
        row = []
        for j in order:
            cell = raw_table[i][j]
            if isinstance(cell, str):
                if cell not in index:
                    raise InputError(f"unknown label {cell!r} in table")
                row.append(index[cell])
            elif isinstance(cell, int) and not isinstance(cell, bool):
                # integer cells index the caller's original ordering
                if not 0 <= cell < n:
                    raise InputError(f"table entry {cell} out of range")
                row.append(index[names[cell]])
            else:
                raise InputError(f"bad table entry {cell!r}")
        table.append(tuple(row))
    return new_names, tuple(table)


def validate_be_algebra(names, raw_table) -> AxiomReport:
    """Check V1-V4 on a labelled table; raise InputError if it is malformed."""
    new_names, table = _normalize(names, raw_table)
    return AxiomReport(new_names, check_axioms(table))


@dataclass(frozen=True)
class BEAlgebra:
    names: tuple
    table: tuple

    def __post_init__(self):
        n = len(self.names)
        if n == 0 or len(self.table) != n:
            raise InputError("empty or inconsistent table")
        if self.names[0] != UNIT_LABEL:
            raise InputError("unit must sit at index 0; use BEAlgebra.from_labels")
        for row in self.table:
            if len(row) != n or any(not 0 <= c < n for c in row):
                raise InputError("table entries must be indices in [0, n)")
        report = AxiomReport(self.names, check_axioms(self.table))
        if not report.passed:
            raise NotABEAlgebra(report)

    @classmethod
    def from_labels(cls, names, raw_table) -> "BEAlgebra":
        new_names, table = _normalize(names, raw_table)
        return cls(new_names, table)

    @classmethod
    def from_table(cls, table, names=None) -> "BEAlgebra":
        """Build from an index table whose unit is already at index 0."""
        n = len(table)
        if names is None:
            names = default_names(n)
        return cls(tuple(names), tuple(tuple(r) for r in table))

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def unit(self) -> int:
        return 0

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise InputError(f"unknown element {label!r}") from None

    def label_table(self) -> list:
        return [[self.names[c] for c in row] for row in self.table]

    def __repr__(self) -> str:
        return f"BEAlgebra(n={self.size}, names={list(self.names)})"


def default_names(n: int) -> tuple:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return (UNIT_LABEL,) + tuple(letters[i] for i in range(n - 1))


def mul(A: BEAlgebra, x: int, y: int) -> int:
    return A.table[x][y]


def leq(A: BEAlgebra, x: int, y: int) -> bool:
    """x <= y iff x*y = 1."""
    return A.table[x][y] == A.unit


def is_self_distributive(A: BEAlgebra) -> Verdict:
    t = A.table
    n = A.size
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[x][t[y][z]] != t[t[x][y]][t[x][z]]:
                    return Verdict(False, {"x": x, "y": y, "z": z})
    return Verdict(True)


def is_transitive(A: BEAlgebra) -> Verdict:
    """y*z <= (x*y)*(x*z) for every triple."""
    t = A.table
    n = A.size
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if t[t[y][z]][t[t[x][y]][t[x][z]]] != 0:
                    return Verdict(False, {"x": x, "y": y, "z": z})
    return Verdict(True)


B1 = BEAlgebra(("1",), ((0,),))
B2 = BEAlgebra(("1", "a"), ((0, 1), (0, 0)))
