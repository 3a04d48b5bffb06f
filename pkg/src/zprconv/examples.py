"""Encoders used as fixtures in the docs, the selftest and the tests."""

from .poly import PolyMatrix
from .ring import RingContext

Z4 = RingContext(2, 2)

# G = [2, 2+z]; its delay-free p-encoder has two trellis states
G_SMALL = PolyMatrix.from_lists(Z4, [[[2], [2, 1]]])
E_SMALL = PolyMatrix.from_lists(Z4, [[[2], [2, 1]], [[0], [2]]])

# a (3,2) code with p-indices (2, 1, 1, 0)
G_32 = PolyMatrix.from_lists(Z4, [[[1, 0, 1], [1], []], [[0, 2], [2], [1]]])
E_32 = PolyMatrix.from_lists(
    Z4, [[[1, 0, 1], [1], []], [[2], [2, 2], [0, 1]], [[0, 2], [2], [1]], [[], [], [2]]]
)
REALIZATION_32 = {
    "A": ((0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)),
    "B": ((1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 0)),
    "C": ((0, 0, 0), (1, 0, 0), (0, 2, 1), (2, 0, 0)),
    "D": ((1, 1, 0), (2, 2, 0), (0, 2, 1), (0, 0, 2)),
}

# noncatastrophic minimal p-encoders with 4 and 2 states
G_1 = PolyMatrix.from_lists(Z4, [[[3, 3, 3], [3, 1, 1]]])
E_1 = PolyMatrix.from_lists(Z4, [[[3, 3, 3], [3, 1, 1]], [[2], [2]]])
G_2 = PolyMatrix.from_lists(Z4, [[[1, 1], [1, 3]]])
E_2 = PolyMatrix.from_lists(Z4, [[[1, 1], [1, 3]], [[2], [2]]])
# digit stack (g, 2g) of G_2: catastrophic
STACK_2 = PolyMatrix.from_lists(Z4, [[[1, 1], [1, 3]], [[2, 2], [2, 2]]])
