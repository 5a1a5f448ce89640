"""Shared data for the rank-5 example surface TV(-2,-1,-1,-1,-1,-2,-1).

Matrices are given column-per-entry over the Pic basis (D_2, D_3, D_4, D_5,
D_7) in 1-based divisor labels, i.e. ray indices (1, 2, 3, 4, 6).  In this
presentation (rays grown from v_1 = (1,0), v_2 = (0,1)) the two (-2)-rays are
index 0 and index 5; the matrices' "D_1" twist label corresponds to ray 5
here, the two labels being exchanged by the surface's fan automorphism.
"""

from torsys import from_selfints
from torsys.systems import LineBundleSequence, ToricSystem

SELFINTS = (-2, -1, -1, -1, -1, -2, -1)
BASIS_RAYS = (1, 2, 3, 4, 6)  # D_2, D_3, D_4, D_5, D_7
GOOD_BASIS_PATH = (6, 4, 0)  # contract D_7, then D_5, then D_1 down to F_1

# the non-constructible toric system
A_ROWS = [
    [0, 1, -1, 1, 0, 0, 0],
    [-1, 1, 0, 1, 0, 0, 1],
    [0, 0, 1, 0, 1, -1, 1],
    [0, 0, 1, -1, 1, 0, 0],
    [1, -1, 0, 0, -1, 1, -1],
]

# its exceptional sequence (first bundle trivial)
E_ROWS = [
    [0, 0, 1, 0, 1, 1, 1],
    [0, -1, 0, 0, 1, 1, 1],
    [0, 0, 0, 1, 1, 2, 1],
    [0, 0, 0, 1, 0, 1, 1],
    [0, 1, 0, 0, 0, -1, 0],
]

# image of the sequence under the spherical twist at the (-2)-curve that the
# matrix labels call D_1 (ray index 5 in this presentation)
TE_ROWS = [
    [0, 1, 1, 1, 1, 1, 2],
    [0, 0, 0, 1, 1, 1, 2],
    [0, 0, 0, 1, 1, 2, 1],
    [0, -1, 0, 0, 0, 1, 0],
    [0, 0, 0, -1, 0, -1, -1],
]

TWIST_RAY_FOR_PRINTED_TE = 5


def surface():
    return from_selfints(SELFINTS)


def basis_classes(x=None):
    x = x or surface()
    return [x.divisor(i) for i in BASIS_RAYS]


def classes_from_columns(rows, x=None):
    x = x or surface()
    basis = basis_classes(x)
    out = []
    for col in zip(*rows):
        c = x.zero_class()
        for coef, b in zip(col, basis):
            c = c + coef * b
        out.append(c)
    return out


def printed_system() -> ToricSystem:
    x = surface()
    return ToricSystem.validate(x, classes_from_columns(A_ROWS, x))


def printed_sequence() -> LineBundleSequence:
    return LineBundleSequence.of(classes_from_columns(E_ROWS))


def printed_twisted_sequence() -> LineBundleSequence:
    return LineBundleSequence.of(classes_from_columns(TE_ROWS))
