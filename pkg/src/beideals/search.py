"""Enumeration of finite BE-algebras and of grid N-functions.

Tables are filled by depth-first search. Row 1, column 1 and the
diagonal are fixed by V3, V2 and V1; the other (n-1)(n-2) cells are
assigned in row-major order, and after each assignment every exchange
law instance that reads the new cell is re-checked as soon as all of its
operands are known.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .algebra import BEAlgebra, InputError, check_axioms, is_self_distributive, is_transitive
from .nstructures import NFunction, to_rational

DEFAULT_SIZE_CAP = 6
DEFAULT_FUNCTION_CAP = 10**6
UNSET = -1


@dataclass(frozen=True)
class EnumerationConfig:
    size: int
    filter: str = "none"  # "none" | "transitive" | "self-distributive"
    up_to_iso: bool = False
    count_only: bool = False
    out: Optional[str] = None
    size_cap: int = DEFAULT_SIZE_CAP
    workers: int = 1

    def __post_init__(self):
        if not 1 <= self.size <= self.size_cap:
            raise InputError(f"size must lie in [1, {self.size_cap}]")
        if self.filter not in ("none", "transitive", "self-distributive"):
            raise InputError(f"unknown filter {self.filter!r}")
        if self.workers < 1:
            raise InputError("workers must be positive")


def free_cells(n: int) -> list:
    return [(x, y) for x in range(1, n) for y in range(1, n) if x != y]


def _forced_table(n: int) -> list:
    t = [[UNSET] * n for _ in range(n)]
    for y in range(n):
        t[0][y] = y
    for x in range(n):
        t[x][0] = 0
        t[x][x] = 0
    return t


def _consistent(t: list, a: int, n: int) -> bool:
    """Check every exchange instance x*(y*z) = y*(x*z) with x = a.

    Instances with y = a are the same equations with x and y swapped, so
    this covers every instance that can read a cell in row ``a``.
    """
    ta = t[a]
    for y in range(n):
        ty = t[y]
        for z in range(n):
            yz = ty[z]
            az = ta[z]
            if yz == UNSET or az == UNSET:
                continue
            lhs = ta[yz]
            rhs = ty[az]
            if lhs != UNSET and rhs != UNSET and lhs != rhs:
                return False
    return True


def _dfs(t: list, cells: list, i: int, n: int) -> Iterator[tuple]:
    if i == len(cells):
        yield tuple(tuple(r) for r in t)
        return
    x, y = cells[i]
    for v in range(n):
        t[x][y] = v
        if _consistent(t, x, n):
            yield from _dfs(t, cells, i + 1, n)
    t[x][y] = UNSET


def labeled_tables(n: int, first: Optional[int] = None) -> Iterator[tuple]:
    """Every index table on n elements satisfying V1-V4, in DFS order.

    ``first`` pins the value of the first free cell, which is how the
    search is partitioned across workers.
    """
    t = _forced_table(n)
    cells = free_cells(n)
    if not cells:
        if all(v is None for v in check_axioms(t).values()):
            yield tuple(tuple(r) for r in t)
        return
    if first is None:
        yield from _dfs(t, cells, 0, n)
        return
    x, y = cells[0]
    t[x][y] = first
    if _consistent(t, x, n):
        yield from _dfs(t, cells, 1, n)


def _tables_for_first(args) -> list:
    n, first = args
    return list(labeled_tables(n, first))


def naive_tables(n: int) -> list:
    """Independent oracle: try every assignment of the free cells."""
    cells = free_cells(n)
    out = []
    for values in itertools.product(range(n), repeat=len(cells)):
        t = _forced_table(n)
        for (x, y), v in zip(cells, values):
            t[x][y] = v
        if all(w is None for w in check_axioms(t).values()):
            out.append(tuple(tuple(r) for r in t))
    return sorted(out)


def relabel(table, perm) -> tuple:
    """Table of the algebra obtained by renaming element i to perm[i]."""
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))


def _unit_fixing_perms(n: int):
    for rest in itertools.permutations(range(1, n)):
        yield (0,) + rest


def canonical_form(A) -> tuple:
    """Lexicographically least table over relabelings that fix the unit."""
    table = A.table if isinstance(A, BEAlgebra) else A
    return min(relabel(table, p) for p in _unit_fixing_perms(len(table)))


def orbit(table) -> set:
    return {relabel(table, p) for p in _unit_fixing_perms(len(table))}


def _passes(table, filt: str) -> bool:
    if filt == "none":
        return True
    A = BEAlgebra.from_table(table)
    if filt == "transitive":
        return is_transitive(A).ok
    return is_self_distributive(A).ok


def enumerate_tables(config: EnumerationConfig) -> list:
    """Sorted list of tables selected by ``config``.

    Output does not depend on the worker count: partitions are merged and
    sorted before filtering and quotienting.
    """
    n = config.size
    if n <= 2 or config.workers == 1:
        tables = list(labeled_tables(n))
    else:
        jobs = [(n, v) for v in range(n)]
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            tables = [t for part in ex.map(_tables_for_first, jobs) for t in part]
    tables.sort()
    tables = [t for t in tables if _passes(t, config.filter)]
    if config.up_to_iso:
        tables = sorted({canonical_form(t) for t in tables})
    return tables


def enumerate_algebras(config: EnumerationConfig) -> Iterator[BEAlgebra]:
    for t in enumerate_tables(config):
        yield BEAlgebra.from_table(t)


def grid_values(step) -> list:
    """0, -step, -2*step, ..., -1 for step = 1/m."""
    step = to_rational(step)
    if step <= 0 or step.numerator != 1:
        raise InputError("step must be 1/m for a positive integer m")
    m = step.denominator
    return [Fraction(-i, m) for i in range(m + 1)]


def count_n_functions(A: BEAlgebra, step) -> int:
    return len(grid_values(step)) ** A.size


def enumerate_n_functions(
    A: BEAlgebra,
    step,
    sample: Optional[int] = None,
    seed: Optional[int] = None,
    cap: int = DEFAULT_FUNCTION_CAP,
) -> Iterator[NFunction]:
    """Grid N-functions on ``A``: all of them in lexicographic order, or a seeded sample."""
    vals = grid_values(step)
    if sample is not None:
        rng = random.Random(seed)
        for _ in range(sample):
            yield NFunction(A, tuple(rng.choice(vals) for _ in range(A.size)))
        return
    total = len(vals) ** A.size
    if total > cap:
        raise InputError(f"{total} functions exceed the cap {cap}; pass a sample size")
    for combo in itertools.product(vals, repeat=A.size):
        yield NFunction(A, combo)
