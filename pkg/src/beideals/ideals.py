"""Crisp ideals of a finite BE-algebra.

Subsets are ``frozenset`` objects of element indices. Two deciders are
provided and are expected to agree: one straight from the two closure
clauses of the ideal definition, one from the unit-membership /
cancellation characterization.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .algebra import BEAlgebra, InputError, Verdict

DEFAULT_SIZE_CAP = 20


def _as_subset(A: BEAlgebra, I: Iterable[int]) -> frozenset:
    I = frozenset(I)
    if not I:
        raise InputError("ideal candidates must be non-empty")
    for i in I:
        if not isinstance(i, int) or not 0 <= i < A.size:
            raise InputError(f"index {i!r} is not an element of this algebra")
    return I


def mask_of(I: Iterable[int]) -> int:
    m = 0
    for i in I:
        m |= 1 << i
    return m


def subset_of(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def subset_key(I: frozenset) -> tuple:
    """Canonical order: cardinality first, then bitmask value."""
    return (len(I), mask_of(I))


def is_ideal_def(A: BEAlgebra, I: Iterable[int]) -> Verdict:
    """(1) x*s in I and (2) (s*(q*x))*x in I, for x in X and s, q in I."""
    I = _as_subset(A, I)
    t = A.table
    members = sorted(I)
    for x in range(A.size):
        for s in members:
            if t[x][s] not in I:
                return Verdict(False, {"clause": 1, "x": x, "s": s})
    for x in range(A.size):
        for s in members:
            for q in members:
                if t[t[s][t[q][x]]][x] not in I:
                    return Verdict(False, {"clause": 2, "x": x, "s": s, "q": q})
    return Verdict(True)


def is_ideal_lemma(A: BEAlgebra, I: Iterable[int]) -> Verdict:
    """1 in I, and y in I with x*(y*z) in I forces x*z in I."""
    I = _as_subset(A, I)
    t = A.table
    if A.unit not in I:
        return Verdict(False, {"clause": 1})
    for x in range(A.size):
        for y in sorted(I):
            for z in range(A.size):
                if t[x][t[y][z]] in I and t[x][z] not in I:
                    return Verdict(False, {"clause": 2, "x": x, "y": y, "z": z})
    return Verdict(True)


@lru_cache(maxsize=1 << 16)
def _is_ideal_mask(A: BEAlgebra, mask: int) -> bool:
    return is_ideal_def(A, subset_of(mask)).ok


def is_ideal_or_empty(A: BEAlgebra, I: Iterable[int]) -> bool:
    """Membership in J(X) together with the empty set."""
    m = mask_of(I)
    return m == 0 or _is_ideal_mask(A, m)


def enumerate_ideals(A: BEAlgebra, size_cap: int = DEFAULT_SIZE_CAP) -> list:
    """All ideals of ``A`` in canonical order, by scanning every non-empty subset."""
    if A.size > size_cap:
        raise InputError(f"algebra size {A.size} exceeds the subset-scan cap {size_cap}")
    found = [subset_of(m) for m in range(1, 1 << A.size) if _is_ideal_mask(A, m)]
    return sorted(found, key=subset_key)
