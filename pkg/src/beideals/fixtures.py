"""The two worked examples, as ready-made structures."""

from fractions import Fraction

from .algebra import BEAlgebra
from .nstructures import NFunction

EXAMPLE1_ELEMENTS = ["1", "α", "h", "m", "0"]
EXAMPLE1_TABLE = [
    ["1", "α", "h", "m", "0"],
    ["1", "1", "α", "m", "m"],
    ["1", "1", "1", "m", "m"],
    ["1", "α", "h", "1", "α"],
    ["1", "1", "α", "1", "1"],
]
EXAMPLE1_FUNCTION = {"1": "-0.7", "α": "-0.7", "h": "-0.7", "m": "-0.2", "0": "-0.2"}
EXAMPLE1_IDEAL = ("1", "α", "h")

EXAMPLE2_ELEMENTS = ["1", "γ", "0", "m", "ω"]
EXAMPLE2_TABLE = [
    ["1", "γ", "0", "m", "ω"],
    ["1", "1", "γ", "m", "m"],
    ["1", "1", "1", "m", "m"],
    ["1", "γ", "0", "1", "γ"],
    ["1", "1", "γ", "1", "1"],
]
EXAMPLE2_FUNCTION = {"1": "-0.9", "γ": "-0.8", "0": "-0.7", "m": "-0.9", "ω": "-0.8"}
# thresholds and k range the example is stated for
EXAMPLE2_WINDOW = (Fraction(-7, 10), Fraction(-3, 10))
EXAMPLE2_K_RANGE = (Fraction(-1), Fraction(-2, 5))


def example1():
    A = BEAlgebra.from_labels(EXAMPLE1_ELEMENTS, EXAMPLE1_TABLE)
    return A, NFunction.from_mapping(A, EXAMPLE1_FUNCTION)


def example2():
    A = BEAlgebra.from_labels(EXAMPLE2_ELEMENTS, EXAMPLE2_TABLE)
    return A, NFunction.from_mapping(A, EXAMPLE2_FUNCTION)


def example2_k_grid() -> list:
    """k = -0.95, -0.90, ..., -0.45: the 0.05 grid inside (-1, -0.4)."""
    return [Fraction(-i, 20) for i in range(19, 8, -1)]
