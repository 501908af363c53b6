"""Builders for the standard small models used throughout tests and fixtures.

Circle models put vertices at equally spaced angles.  The square has
vertices ``i, -1, -i, 1`` (indices 0..3); the octagon starts at the north
pole and goes counterclockwise, so index ``k`` sits at angle 90 + 45k degrees.
"""

from .gcomplex import GComplex, SimplicialComplex, validate_gcomplex
from .groups import GroupHom, cyclic_group, direct_product, trivial_group
from .morita import EquivariantFunctor

SQUARE_NAMES = ("N", "W", "S", "E")
OCTAGON_NAMES = ("N", "NW", "W", "SW", "S", "SE", "E", "NE")


def cycle_complex(n, names=None):
    return SimplicialComplex.from_maximal([(k, (k + 1) % n) for k in range(n)], names=names)


def z2():
    return cyclic_group(2, name="Z/2")


def klein_four():
    """Z/2 x Z/2 with (a, b) at index 2a + b; 1 stands for the sign -1."""
    return direct_product(z2(), z2(), name="D4")


def square_reflection():
    """Z/2 reflecting the square across the y-axis (fixes N and S)."""
    G = z2()
    X = cycle_complex(4, SQUARE_NAMES)
    return validate_gcomplex(G, X, [(0, 1, 2, 3), (0, 3, 2, 1)])


def square_trivial():
    X = cycle_complex(4, SQUARE_NAMES)
    return validate_gcomplex(trivial_group(), X, [(0, 1, 2, 3)])


def square_antipodal():
    G = z2()
    X = cycle_complex(4, SQUARE_NAMES)
    return validate_gcomplex(G, X, [(0, 1, 2, 3), (2, 3, 0, 1)])


def octagon_klein():
    """The Klein four-group acting on the octagon by the two axis reflections.

    Element (-1, 1) (index 2) reflects across the y-axis, fixing N and S;
    element (1, -1) (index 1) reflects across the x-axis, fixing E and W.
    """
    G = klein_four()
    X = cycle_complex(8, OCTAGON_NAMES)
    # angle(k) = 90 + 45k; y-reflection: a -> 180 - a, x-reflection: a -> -a
    y_refl = tuple((-k) % 8 for k in range(8))
    x_refl = tuple((4 - k) % 8 for k in range(8))
    rot = tuple((k + 4) % 8 for k in range(8))
    return validate_gcomplex(G, X, [tuple(range(8)), x_refl, y_refl, rot])


def octagon_antipodal():
    G = z2()
    X = cycle_complex(8, OCTAGON_NAMES)
    return validate_gcomplex(G, X, [tuple(range(8)), tuple((k + 4) % 8 for k in range(8))])


def edge_with_swap():
    """A single edge whose endpoints are exchanged (not admissible)."""
    X = SimplicialComplex.from_maximal([(0, 1)], names=("a", "b"))
    return GComplex(z2(), X, [(0, 1), (1, 0)])


def triangle_rotation():
    """Hollow triangle rotated by Z/3; admissible, since no edge is fixed setwise."""
    G = cyclic_group(3)
    X = cycle_complex(3)
    return GComplex(G, X, [tuple((v + k) % 3 for v in range(3)) for k in range(3)])


def torus(n=3):
    """The standard n x n triangulated torus (n >= 3), trivial group."""
    idx = lambda i, j: (i % n) * n + (j % n)
    tris = []
    for i in range(n):
        for j in range(n):
            tris.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            tris.append((idx(i, j), idx(i, j + 1), idx(i + 1, j + 1)))
    X = SimplicialComplex.from_maximal(tris, names=[f"v{i}{j}" for i in range(n) for j in range(n)])
    return validate_gcomplex(trivial_group(), X, [tuple(range(n * n))])


def doubling_functor():
    """The doubling map z -> i z^2 from the octagon model to the square model.

    On groups it is the quotient of the Klein four-group by the rotation
    (-1, -1).
    """
    src = octagon_klein()
    tgt = square_reflection()
    hom = GroupHom(src.group, tgt.group, [0, 1, 1, 0])
    return EquivariantFunctor(src, tgt, hom, [(k + 2) % 4 for k in range(8)])


def fold_functor():
    """Collapse of the reflection action onto the trivial group.

    Vertices E and W are identified; the target is the square with the
    trivial group, and the image is the arc N-W-S.
    """
    src = square_reflection()
    tgt = square_trivial()
    hom = GroupHom(src.group, tgt.group, [0, 0])
    return EquivariantFunctor(src, tgt, hom, [0, 1, 2, 1])


def identity_functor(X):
    hom = GroupHom(X.group, X.group, list(range(X.group.order)))
    return EquivariantFunctor(X, X, hom, list(range(X.vertex_count)))


def antipodal_quotient_functor():
    """The free antipodal octagon onto the plain square, k -> k mod 4."""
    src = octagon_antipodal()
    tgt = square_trivial()
    hom = GroupHom(src.group, tgt.group, [0, 0])
    return EquivariantFunctor(src, tgt, hom, [k % 4 for k in range(8)])
