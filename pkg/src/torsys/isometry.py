"""K-isometries of the Picard lattice: roots, reflections, Weyl groups, and an
independent brute-force enumeration of all pairing-and-K-preserving integer
automorphisms.

For Picard rank 3 <= rho <= 9 the K-isometries form the finite Weyl group of
the root set {D : D^2 = -2, D.K = 0}.  Roots are enumerated from the defining
equations in a good basis, where K = -3H + R_1 + ... + R_l pins the linear
constraint 3 d_0 = -sum d_i and the quadric gives sum d_i^2 = d_0^2 + 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from . import _intlinalg
from .surface import DivisorClass, ToricSurface
from .systems import ToricSystem


class RankOutOfRange(ValueError):
    """Picard rank outside the range this operation supports."""


class SizeCapExceeded(RuntimeError):
    """Group closure or search grew past the configured cap."""


@dataclass(frozen=True)
class Root:
    """A (-2)-class orthogonal to K."""

    cls: DivisorClass

    def __post_init__(self):
        assert self.cls.square() == -2 and self.cls.k_degree() == 0


@dataclass(frozen=True, eq=False)
class Isometry:
    """An automorphism of Pic(X) preserving the pairing and fixing K, stored
    as a matrix on the coordinates in the basis ([D_3], ..., [D_n])."""

    surface: ToricSurface
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.surface.gram_matrix()
        m = self.matrix
        mt = _intlinalg.transpose(m)
        if _intlinalg.mat_mul(mt, _intlinalg.mat_mul(g, m)) != g:
            raise ValueError("matrix does not preserve the intersection pairing")
        k = self.surface.canonical_coords()
        if _intlinalg.mat_vec(m, k) != k:
            raise ValueError("matrix does not fix the canonical class")
        assert abs(_intlinalg.det(m)) == 1

    def apply(self, cls: DivisorClass) -> DivisorClass:
        self.surface._require_same(cls.surface)
        return self.surface.class_from_coords(
            _intlinalg.mat_vec(self.matrix, cls.coords())
        )

    def apply_system(self, system: ToricSystem) -> ToricSystem:
        return ToricSystem.validate(
            system.surface, tuple(self.apply(a) for a in system.entries)
        )

    def __mul__(self, other: "Isometry") -> "Isometry":
        """Composition self after other."""
        self.surface._require_same(other.surface)
        return Isometry(self.surface, _intlinalg.mat_mul(self.matrix, other.matrix))

    def is_identity(self) -> bool:
        return self.matrix == _intlinalg.identity(len(self.matrix))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Isometry):
            return NotImplemented
        return (
            self.surface.selfints == other.surface.selfints
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.surface.selfints, self.matrix))


def identity_isometry(x: ToricSurface) -> Isometry:
    return Isometry(x, _intlinalg.identity(x.pic_rank))


def _vectors_with_sum_and_square(
    length: int, total: int, square: int
) -> list[tuple[int, ...]]:
    """All integer vectors of given length, coordinate sum and sum of squares."""
    out: list[tuple[int, ...]] = []

    def rec(pos: int, s: int, q: int, acc: list[int]):
        if q < 0:
            return
        rest = length - pos
        if rest == 0:
            if s == 0 and q == 0:
                out.append(tuple(acc))
            return
        if s * s > q * rest:  # Cauchy-Schwarz prune
            return
        b = isqrt(q)
        for v in range(-b, b + 1):
            acc.append(v)
            rec(pos + 1, s - v, q - v * v, acc)
            acc.pop()

    rec(0, total, square, [])
    return out


def _classes_with_square_and_kdeg(
    x: ToricSurface, square: int, kdeg: int
) -> list[DivisorClass]:
    """All classes with given self-intersection and K-degree, via bounded
    search in a good basis (negative definite on K-perp, so finite)."""
    gb = x.good_basis()
    l = x.pic_rank - 1
    found: list[DivisorClass] = []
    # Cauchy-Schwarz forces (3 d_0 + kdeg)^2 <= l (d_0^2 - square), and with
    # 9 - l >= 1 that gives |d_0| <= 6|kdeg| + l|square| + 1.
    span = 6 * abs(kdeg) + l * abs(square) + 1
    for d0 in range(-span, span + 1):
        rhs = l * (d0 * d0 - square)
        lhs = (3 * d0 + kdeg) ** 2
        if lhs > rhs:
            continue
        for d in _vectors_with_sum_and_square(l, -3 * d0 - kdeg, d0 * d0 - square):
            cls = d0 * gb.elements[0]
            for di, ri in zip(d, gb.elements[1:]):
                cls = cls + di * ri
            found.append(cls)
    found.sort(key=lambda c: c.coords())
    return found


def roots(x: ToricSurface) -> tuple[Root, ...]:
    """All roots D^2 = -2, D.K = 0; counts 2 / 8 / 20 for rho = 3 / 4 / 5."""
    if not 3 <= x.pic_rank <= 9:
        raise RankOutOfRange(f"root systems require 3 <= rho <= 9, got {x.pic_rank}")
    return tuple(Root(c) for c in _classes_with_square_and_kdeg(x, -2, 0))


def reflection(root: Root) -> Isometry:
    """The reflection L' -> L' + (D.L') D at a root D; involutive K-isometry."""
    x = root.cls.surface
    rho = x.pic_rank
    rc = root.cls.coords()
    cols = []
    for j in range(rho):
        e = x.divisor(j + 2)
        pair = root.cls.dot(e)
        col = tuple(
            (1 if i == j else 0) + pair * rc[i] for i in range(rho)
        )
        cols.append(col)
    return Isometry(x, tuple(zip(*cols)))


def weyl_group(x: ToricSurface, size_cap: int = 10**6) -> tuple[Isometry, ...]:
    """Closure of the root reflections under composition, by breadth-first
    multiplication with matrix dedup.  Deterministic order."""
    if not 3 <= x.pic_rank <= 9:
        raise RankOutOfRange(f"Weyl groups require 3 <= rho <= 9, got {x.pic_rank}")
    gens = []
    seen_gen = set()
    for r in roots(x):
        s = reflection(r)
        if s.matrix not in seen_gen:
            seen_gen.add(s.matrix)
            gens.append(s)
    ident = identity_isometry(x)
    elements: dict[tuple, Isometry] = {ident.matrix: ident}
    frontier = [ident]
    while frontier:
        new: list[Isometry] = []
        for h in frontier:
            for g in gens:
                prod = g * h
                if prod.matrix not in elements:
                    elements[prod.matrix] = prod
                    new.append(prod)
                    if len(elements) > size_cap:
                        raise SizeCapExceeded(f"group exceeded {size_cap} elements")
        frontier = new
    return tuple(elements.values())


def all_k_isometries(x: ToricSurface, node_cap: int = 10**6) -> tuple[Isometry, ...]:
    """Every integer automorphism of Pic preserving the pairing and fixing K,
    by backtracking over images of the basis classes [D_3], ..., [D_n].

    Each image must match the square and K-degree of its basis class, which
    confines it to a finite candidate set; pairwise products prune the search.
    Serves as the independent oracle for the Weyl-group description.
    """
    rho = x.pic_rank
    if not 3 <= rho <= 5:
        raise RankOutOfRange(f"exhaustive isometry search supports rho 3..5, got {rho}")
    basis = [x.divisor(i + 2) for i in range(rho)]
    gram = x.gram_matrix()
    k = x.canonical_class()
    candidates = [
        _classes_with_square_and_kdeg(x, b.square(), b.dot(k)) for b in basis
    ]
    k_coords = x.canonical_coords()
    results: list[Isometry] = []
    chosen: list[DivisorClass] = []
    nodes = 0

    def rec(col: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SizeCapExceeded(f"isometry search exceeded {node_cap} nodes")
        if col == rho:
            mat = tuple(zip(*(c.coords() for c in chosen)))
            if _intlinalg.mat_vec(mat, k_coords) == k_coords:
                results.append(Isometry(x, mat))
            return
        for cand in candidates[col]:
            if all(
                cand.dot(chosen[i]) == gram[col][i] for i in range(col)
            ):
                chosen.append(cand)
                rec(col + 1)
                chosen.pop()

    rec(0)
    results.sort(key=lambda iso: iso.matrix)
    return tuple(results)


def orbit(system: ToricSystem, isometries) -> list[ToricSystem]:
    """Entrywise images w(A) for each w, deduplicated as exact sequences,
    in the order the isometries are supplied."""
    seen = set()
    out: list[ToricSystem] = []
    for w in isometries:
        image = w.apply_system(system)
        key = image.key()
        if key not in seen:
            seen.add(key)
            out.append(image)
    return out
