"""N-functions (maps into [-1, 0]) and the sets cut out of them.

Every value, threshold and parameter is a :class:`fractions.Fraction`.
The predicates below compare a threshold ``t`` against finitely many
quantities, so their truth is piecewise constant in ``t``;
:func:`critical_thresholds` collects those quantities so that a
"for all t" statement reduces to a finite sweep.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

from .algebra import BEAlgebra, InputError, Verdict
from .ideals import is_ideal_def, is_ideal_or_empty

ZERO = Fraction(0)
MINUS_ONE = Fraction(-1)

RationalLike = Union[Fraction, int, str]


def to_rational(value: RationalLike) -> Fraction:
    """Parse ints, Fractions, ``"p/q"`` and finite decimal strings exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational: {value!r}") from None
    # floats are rejected: their binary expansion is not what the user typed
    raise InputError(f"not an exact rational: {value!r}")


def fmt(q: Fraction) -> str:
    """Shortest exact text for ``q``: a terminating decimal when possible."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    digits = max(twos, fives)
    scaled = q * 10**digits
    sign = "-" if scaled < 0 else ""
    n = abs(scaled.numerator)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0")


def check_k(k: RationalLike) -> Fraction:
    k = to_rational(k)
    if not -1 < k <= 0:
        raise InputError(f"k must lie in (-1, 0], got {fmt(k)}")
    return k


def beta(k: Fraction) -> Fraction:
    """The boundary constant (-k-1)/2."""
    return (-k - 1) / 2


@dataclass(frozen=True)
class NFunction:
    algebra: BEAlgebra
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.algebra.size:
            raise InputError("one value per element is required")
        vals = tuple(to_rational(v) for v in self.values)
        for v in vals:
            if not MINUS_ONE <= v <= ZERO:
                raise InputError(f"N-function value {fmt(v)} outside [-1, 0]")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, A: BEAlgebra, mapping: Mapping[str, RationalLike]) -> "NFunction":
        unknown = set(mapping) - set(A.names)
        if unknown:
            raise InputError(f"unknown elements in function: {sorted(unknown)}")
        missing = [a for a in A.names if a not in mapping]
        if missing:
            raise InputError(f"function is missing elements: {missing}")
        return cls(A, tuple(mapping[a] for a in A.names))

    @classmethod
    def constant(cls, A: BEAlgebra, value: RationalLike) -> "NFunction":
        return cls(A, (to_rational(value),) * A.size)

    @classmethod
    def characteristic(cls, A: BEAlgebra, I) -> "NFunction":
        """-1 on ``I`` and 0 elsewhere."""
        I = frozenset(I)
        return cls(A, tuple(MINUS_ONE if x in I else ZERO for x in range(A.size)))

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def image(self) -> list:
        return sorted(set(self.values))

    def as_mapping(self) -> dict:
        return {a: fmt(v) for a, v in zip(self.algebra.names, self.values)}


@dataclass(frozen=True)
class PointAssertion:
    """The point structure x/t: value t at x, 0 elsewhere."""

    x: int
    t: Fraction

    def __post_init__(self):
        t = to_rational(self.t)
        if not MINUS_ONE <= t < ZERO:
            raise InputError(f"point threshold must lie in [-1, 0), got {fmt(t)}")
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class ThresholdGrid:
    """Breakpoints in [-1, 0] with their sources, plus one interior point per gap."""

    breakpoints: tuple
    midpoints: tuple
    sources: dict = field(compare=False)

    def points(self, lo: Fraction = MINUS_ONE, hi: Fraction = ZERO, include_hi: bool = True) -> list:
        pts = sorted(set(self.breakpoints) | set(self.midpoints))
        return [p for p in pts if lo <= p and (p < hi or (include_hi and p == hi))]

    def intervals(self) -> list:
        """Half-open ``[b_i, b_{i+1})`` pairs with their representative midpoint."""
        b = self.breakpoints
        return [(b[i], b[i + 1], (b[i] + b[i + 1]) / 2) for i in range(len(b) - 1)]


def critical_thresholds(f: NFunction, k: Optional[RationalLike] = None) -> ThresholdGrid:
    sources: dict = {}

    def add(v: Fraction, src: str):
        if MINUS_ONE <= v <= ZERO:
            sources.setdefault(v, set()).add(src)

    add(MINUS_ONE, "bound")
    add(ZERO, "bound")
    for v in f.image():
        add(v, "image")
    if k is not None:
        k = check_k(k)
        for v in f.image():
            add(-1 - k - v, "reflected")
        add(beta(k), "beta")
    bps = tuple(sorted(sources))
    mids = tuple((bps[i] + bps[i + 1]) / 2 for i in range(len(bps) - 1))
    return ThresholdGrid(bps, mids, {b: tuple(sorted(s)) for b, s in sources.items()})


def _check_t(t: RationalLike, closed_top: bool) -> Fraction:
    t = to_rational(t)
    ok = MINUS_ONE <= t <= ZERO if closed_top else MINUS_ONE <= t < ZERO
    if not ok:
        rng = "[-1, 0]" if closed_top else "[-1, 0)"
        raise InputError(f"threshold {fmt(t)} outside {rng}")
    return t


def cut(f: NFunction, t: RationalLike) -> frozenset:
    """Closed cut {x : f(x) <= t}, for t in [-1, 0]."""
    t = _check_t(t, closed_top=True)
    return frozenset(x for x, v in enumerate(f.values) if v <= t)


def is_n_ideal(f: NFunction) -> Verdict:
    """Every closed cut is empty or an ideal.

    A cut only changes at image values and is empty below the least one,
    so scanning ``t`` over the image is exhaustive.
    """
    A = f.algebra
    for v in f.image():
        C = cut(f, v)
        if not is_ideal_or_empty(A, C):
            return Verdict(False, {"t": v, "cut": sorted(C), "ideal": is_ideal_def(A, C).witness})
    return Verdict(True)


def is_n_ideal_dense(f: NFunction) -> Verdict:
    """Same question answered at every grid point, midpoints included."""
    A = f.algebra
    for t in critical_thresholds(f).points():
        C = cut(f, t)
        if not is_ideal_or_empty(A, C):
            return Verdict(False, {"t": t, "cut": sorted(C)})
    return Verdict(True)


def employed(f: NFunction, p: PointAssertion) -> bool:
    """x/t [e] f: f(x) <= t."""
    return f(p.x) <= p.t


def k_employed(f: NFunction, p: PointAssertion, k: RationalLike) -> bool:
    """x/t [c_k] f: f(x) + t + k + 1 < 0."""
    k = check_k(k)
    return f(p.x) + p.t + k + 1 < 0


def e_or_ck(f: NFunction, p: PointAssertion, k: RationalLike) -> bool:
    k = check_k(k)
    return employed(f, p) or k_employed(f, p, k)


def q_set(f: NFunction, t: RationalLike, k: RationalLike) -> frozenset:
    """{x : x/t [c_k] f}."""
    t = _check_t(t, closed_top=False)
    k = check_k(k)
    return frozenset(x for x, v in enumerate(f.values) if v + t + k + 1 < 0)


def level_set(f: NFunction, t: RationalLike, k: RationalLike) -> frozenset:
    """C(f;t) together with {x : f(x) + t + k + 1 <= 0}."""
    t = _check_t(t, closed_top=False)
    k = check_k(k)
    return frozenset(x for x, v in enumerate(f.values) if v <= t or v + t + k + 1 <= 0)
