"""([e], [e] v [c_k])-ideals: four deciders and the consequence checks.

The deciders are

* ``definition``: the point-structure implications, swept over every
  threshold class of the k-aware grid;
* ``th4``: the two closed-form max-inequalities;
* ``th6``: the transitive-algebra inequalities (unit bound plus the
  cancellation form);
* ``levels``: every set ``[f]_t`` is empty or an ideal.

The last two are only defined on transitive algebras and raise
:class:`PreconditionError` elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .algebra import BEAlgebra, PreconditionError, Verdict, is_transitive, leq
from .ideals import is_ideal_def, is_ideal_or_empty
from .nstructures import (
    NFunction,
    RationalLike,
    ZERO,
    beta,
    check_k,
    critical_thresholds,
    is_n_ideal,
    level_set,
    q_set,
)

METHODS = ("definition", "th4", "th6", "levels")


@dataclass(frozen=True)
class EkParameters:
    k: Fraction

    def __post_init__(self):
        object.__setattr__(self, "k", check_k(self.k))

    @property
    def beta(self) -> Fraction:
        return beta(self.k)


@dataclass(frozen=True)
class EkVerdict(Verdict):
    method: str = ""


@dataclass(frozen=True)
class TheoremCheck:
    """Outcome of checking one implication on one structure.

    ``hypotheses_met`` False means the conclusion was not required
    (a vacuous pass); ``holds`` is then True by convention.
    """

    name: str
    hypotheses_met: bool
    holds: bool
    witness: Optional[dict] = None
    normative: bool = True

    @property
    def vacuous(self) -> bool:
        return not self.hypotheses_met


@lru_cache(maxsize=4096)
def _transitive(A: BEAlgebra) -> bool:
    return is_transitive(A).ok


def require_transitive(A: BEAlgebra) -> None:
    if not _transitive(A):
        raise PreconditionError("this characterization needs a transitive BE-algebra")


def _sweep_points(f: NFunction, k: Fraction) -> list:
    return critical_thresholds(f, k).points(include_hi=False)


def definition_violations(f: NFunction, k: RationalLike, window=None):
    """Yield every (clause, elements, t) at which the definition fails.

    ``window`` optionally narrows the thresholds to ``[lo, hi)``; grid
    points outside it are skipped.
    """
    k = check_k(k)
    A = f.algebra
    t = A.table
    n = A.size
    pts = _sweep_points(f, k)
    if window is not None:
        lo, hi = window
        pts = [p for p in pts if lo <= p < hi]
    v = f.values

    def e_or_c(w, s):
        return v[w] <= s or v[w] + s + k + 1 < 0

    for x in range(n):
        for y in range(n):
            w = t[x][y]
            for s in pts:
                if v[y] <= s and not e_or_c(w, s):
                    yield {"clause": 1, "x": x, "y": y, "t": s}
    for x in range(n):
        for y in range(n):
            for z in range(n):
                w = t[t[x][t[y][z]]][z]
                floor = max(v[x], v[y])
                # only s = max{t, r} matters, and any s >= max{f(x), f(y)} is reachable
                for s in pts:
                    if floor <= s and not e_or_c(w, s):
                        yield {"clause": 2, "x": x, "y": y, "z": z, "t": s}


def is_ek_ideal_definition(f: NFunction, k: RationalLike, window=None) -> EkVerdict:
    for w in definition_violations(f, k, window):
        return EkVerdict(False, w, method="definition")
    return EkVerdict(True, method="definition")


def is_ek_ideal_th4(f: NFunction, k: RationalLike) -> EkVerdict:
    k = check_k(k)
    b = beta(k)
    t = f.algebra.table
    n = f.algebra.size
    v = f.values
    for x in range(n):
        for y in range(n):
            if v[t[x][y]] > max(v[y], b):
                return EkVerdict(False, {"clause": "2.1", "x": x, "y": y}, method="th4")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if v[t[t[x][t[y][z]]][z]] > max(v[x], v[y], b):
                    return EkVerdict(False, {"clause": "2.2", "x": x, "y": y, "z": z}, method="th4")
    return EkVerdict(True, method="th4")


def _th6_violation(f: NFunction, b: Fraction) -> Optional[dict]:
    t = f.algebra.table
    n = f.algebra.size
    v = f.values
    for x in range(n):
        if v[0] > max(v[x], b):
            return {"clause": 1, "x": x}
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if v[t[x][z]] > max(v[t[x][t[y][z]]], v[y], b):
                    return {"clause": 2, "x": x, "y": y, "z": z}
    return None


def is_ek_ideal_th6(f: NFunction, k: RationalLike) -> EkVerdict:
    k = check_k(k)
    require_transitive(f.algebra)
    w = _th6_violation(f, beta(k))
    return EkVerdict(w is None, w, method="th6")


def is_ek_ideal_levels(f: NFunction, k: RationalLike) -> EkVerdict:
    k = check_k(k)
    A = f.algebra
    require_transitive(A)
    for s in _sweep_points(f, k):
        L = level_set(f, s, k)
        if not is_ideal_or_empty(A, L):
            w = {"t": s, "set": sorted(L), "ideal": is_ideal_def(A, L).witness}
            return EkVerdict(False, w, method="levels")
    return EkVerdict(True, method="levels")


DECIDERS = {
    "definition": is_ek_ideal_definition,
    "th4": is_ek_ideal_th4,
    "th6": is_ek_ideal_th6,
    "levels": is_ek_ideal_levels,
}


def decide(f: NFunction, k: RationalLike, method: str) -> EkVerdict:
    return DECIDERS[method](f, k)


def check_th5(f: NFunction, k: RationalLike) -> TheoremCheck:
    """Unit bound, the (x*y)*y bound and the order corollary, each up to beta."""
    k = check_k(k)
    b = beta(k)
    A = f.algebra
    t = A.table
    v = f.values
    n = A.size
    for x in range(n):
        if v[0] > max(v[x], b):
            return TheoremCheck("th5", True, False, {"clause": 1, "x": x})
    for x in range(n):
        for y in range(n):
            if v[t[t[x][y]][y]] > max(v[x], b):
                return TheoremCheck("th5", True, False, {"clause": 2, "x": x, "y": y})
    for x in range(n):
        for y in range(n):
            if leq(A, x, y) and v[y] > max(v[x], b):
                return TheoremCheck("th5", True, False, {"clause": "order", "x": x, "y": y})
    return TheoremCheck("th5", True, True)


def check_pro2(f: NFunction, k: RationalLike) -> TheoremCheck:
    k = check_k(k)
    b = beta(k)
    A = f.algebra
    v = f.values
    if _th6_violation(f, b) is not None:
        return TheoremCheck("pro2", False, True)
    for x in range(A.size):
        for y in range(A.size):
            if leq(A, x, y) and v[y] > max(v[x], b):
                return TheoremCheck("pro2", True, False, {"x": x, "y": y})
    return TheoremCheck("pro2", True, True)


def check_n_ideal_promotion(f: NFunction, k: RationalLike) -> TheoremCheck:
    """An ek-ideal with f(1) above beta on a transitive algebra is an N-ideal."""
    k = check_k(k)
    require_transitive(f.algebra)
    if not (f(0) > beta(k) and is_ek_ideal_th4(f, k).ok):
        return TheoremCheck("promotion", False, True)
    verdict = is_n_ideal(f)
    return TheoremCheck("promotion", True, verdict.ok, verdict.witness)


Q_K_LOW = Fraction(-1, 2)


def check_q_theorem(f: NFunction, k: RationalLike, exploratory: bool = False) -> TheoremCheck:
    """Q(f;t) is empty or an ideal for every t in [-1, beta).

    Stated for k in (-1/2, 0]; with ``exploratory`` other k are run too
    and the result is marked non-normative.
    """
    k = check_k(k)
    A = f.algebra
    require_transitive(A)
    normative = Q_K_LOW < k <= ZERO
    if not normative and not exploratory:
        raise PreconditionError("the Q(f;t) statement needs k in (-1/2, 0]")
    if not is_ek_ideal_th4(f, k).ok:
        return TheoremCheck("q_theorem", False, True, normative=normative)
    b = beta(k)
    for s in critical_thresholds(f, k).points(hi=b, include_hi=False):
        Q = q_set(f, s, k)
        if not is_ideal_or_empty(A, Q):
            w = {"t": s, "set": sorted(Q), "ideal": is_ideal_def(A, Q).witness}
            return TheoremCheck("q_theorem", True, False, w, normative=normative)
    return TheoremCheck("q_theorem", True, True, normative=normative)
