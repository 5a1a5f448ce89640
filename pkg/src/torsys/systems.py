"""Toric systems: cyclic divisor sequences replicating the invariant-divisor
intersection pattern, and their interplay with exceptional sequences.

A toric system on X is a length-n sequence (A_1, ..., A_n) of divisor classes
with A_i . A_{i+1} = 1 cyclically, A_i . A_j = 0 for non-adjacent pairs, and
sum A_i = -K_X.  Differences of a length-n exceptional sequence of line
bundles form one, and conversely.  Augmentation transplants a system onto a
blow-up by splitting one entry around the exceptional class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import vanishes_totally
from .surface import (
    BlowupRelation,
    DivisorClass,
    InvalidFan,
    ToricSurface,
    from_selfints,
)


class BadLength(ValueError):
    """System length differs from the rank of K_0."""


class BadIntersection(ValueError):
    """Some pairwise intersection number violates the cyclic pattern."""

    def __init__(self, i: int, j: int, value: int):
        super().__init__(f"A_{i} . A_{j} = {value} violates the cyclic pattern")
        self.i = i
        self.j = j
        self.value = value


class BadCanonicalSum(ValueError):
    """The entries do not sum to the anticanonical class."""


class NotDeaugmentable(ValueError):
    """The requested (position, ray) pair does not reverse an augmentation."""


class Unclassifiable(RuntimeError):
    """A valid Hirzebruch toric system escaped the classification: a bug."""


@dataclass(frozen=True)
class ToricSystem:
    """A validated toric system; construct through :meth:`validate`."""

    surface: ToricSurface
    entries: tuple[DivisorClass, ...]

    @classmethod
    def validate(cls, surface: ToricSurface, entries) -> "ToricSystem":
        entries = tuple(entries)
        n = surface.n
        if len(entries) != n:
            raise BadLength(f"expected {n} entries, got {len(entries)}")
        for a in entries:
            surface._require_same(a.surface)
        for i in range(n):
            for j in range(i + 1, n):
                v = entries[i].dot(entries[j])
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if adjacent and v != 1:
                    raise BadIntersection(i, j, v)
                if not adjacent and v != 0:
                    raise BadIntersection(i, j, v)
        total = entries[0]
        for a in entries[1:]:
            total = total + a
        if total != -surface.canonical_class():
            raise BadCanonicalSum(f"entries sum to {total.reduced()}, not -K")
        return cls(surface, entries)

    def __len__(self) -> int:
        return len(self.entries)

    def squares(self) -> tuple[int, ...]:
        return tuple(a.square() for a in self.entries)

    def rotate(self, k: int) -> "ToricSystem":
        n = len(self.entries)
        k %= n
        return ToricSystem(self.surface, self.entries[k:] + self.entries[:k])

    def mirror(self) -> "ToricSystem":
        return ToricSystem(self.surface, self.entries[::-1])

    def symmetry_images(self):
        """All rotations of the system and of its mirror (2n sequences)."""
        for base in (self, self.mirror()):
            for k in range(len(self.entries)):
                yield base.rotate(k)

    def key(self) -> tuple:
        """Exact identity of the sequence: surface presentation + entry coords."""
        return (self.surface.selfints, tuple(a.coords() for a in self.entries))

    def canonical_key(self) -> tuple:
        """Identity up to rotation and mirror."""
        return (
            self.surface.selfints,
            min(tuple(a.coords() for a in s.entries) for s in self.symmetry_images()),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ToricSystem):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"ToricSystem(on={self.surface}, squares={self.squares()})"


@dataclass(frozen=True)
class LineBundleSequence:
    """A length-n sequence of line-bundle classes (n = rank of K_0), normalized
    so the first entry is the trivial bundle."""

    surface: ToricSurface
    entries: tuple[DivisorClass, ...]

    @classmethod
    def of(cls, entries) -> "LineBundleSequence":
        entries = tuple(entries)
        if not entries:
            raise BadLength("empty sequence")
        first = entries[0]
        if len(entries) != first.surface.k0_rank:
            raise BadLength(
                f"expected {first.surface.k0_rank} bundles, got {len(entries)}"
            )
        entries = tuple(e - first for e in entries)
        return cls(first.surface, entries)

    def key(self) -> tuple:
        return (self.surface.selfints, tuple(e.coords() for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LineBundleSequence):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


def standard_system(x: ToricSurface) -> ToricSystem:
    """The toric system (D_1, ..., D_n) of the invariant divisors."""
    return ToricSystem.validate(x, tuple(x.divisor(i) for i in range(x.n)))


def from_sequence(seq) -> ToricSystem:
    """Toric system of consecutive differences A_i = E_{i+1} - E_i, closed by
    A_n = -K - sum of the others.  Raises the validation errors when the
    sequence is not exceptional-shaped."""
    if not isinstance(seq, LineBundleSequence):
        seq = LineBundleSequence.of(seq)
    x = seq.surface
    if len(seq) != x.k0_rank:
        raise BadLength(f"expected {x.k0_rank} bundles, got {len(seq)}")
    diffs = [seq.entries[i + 1] - seq.entries[i] for i in range(len(seq) - 1)]
    last = -x.canonical_class()
    for a in diffs:
        last = last - a
    return ToricSystem.validate(x, diffs + [last])


def to_sequence(system: ToricSystem) -> LineBundleSequence:
    """Partial sums (O, A_1, A_1 + A_2, ...): the exceptional sequence with
    first bundle trivial."""
    x = system.surface
    entries = [x.zero_class()]
    for a in system.entries[:-1]:
        entries.append(entries[-1] + a)
    return LineBundleSequence(x, tuple(entries))


def associated_surface(system: ToricSystem) -> ToricSurface:
    """TV(A_1^2, ..., A_n^2); valid systems always give a valid fan."""
    try:
        return from_selfints(system.squares())
    except InvalidFan as exc:  # pragma: no cover - guarded by validation
        raise AssertionError(
            f"valid toric system produced an invalid fan: {exc}"
        ) from exc


def augment(system: ToricSystem, blowup_position: int, insert_position: int) -> ToricSystem:
    """Transplant a system onto blow_up(X, p): pull every entry back, insert
    the exceptional class R at ``insert_position`` and subtract R from both of
    its new cyclic neighbours."""
    rel = system.surface.blow_up(blowup_position)
    return _augment_with_relation(system, rel, insert_position)


def _augment_with_relation(
    system: ToricSystem, rel: BlowupRelation, insert_position: int
) -> ToricSystem:
    n = len(system.entries)
    j = insert_position
    if not 0 <= j <= n:
        raise ValueError(f"insert position {j} out of range")
    r = rel.exceptional_class
    up = [rel.pullback(a) for a in system.entries]
    out = up[:j] + [r] + up[j:]
    lo, hi = (j - 1) % (n + 1), (j + 1) % (n + 1)
    out[lo] = out[lo] - r
    out[hi] = out[hi] - r
    return ToricSystem.validate(rel.above, out)


def _augment_at_ray(
    system: ToricSystem, ray_index: int, insert_position: int
) -> ToricSystem:
    """Augmentation along the blow-up that inserts the new ray at list index
    ``ray_index`` (0 .. n); exact inverse of :func:`deaugment`."""
    rel = system.surface._insert_ray(ray_index)
    return _augment_with_relation(system, rel, insert_position)


def deaugment(
    system: ToricSystem, position: int, ray: int
) -> tuple[ToricSystem, DivisorClass]:
    """Reverse an augmentation: the entry at ``position`` must equal the class
    of the contractible ray ``ray``; both neighbours absorb R and everything
    is pushed down to the blow-down.  Returns the smaller system and R."""
    x = system.surface
    if x.selfints[ray % x.n] != -1:
        raise NotDeaugmentable(f"ray {ray} is not contractible on {x}")
    r = x.divisor(ray)
    n = len(system.entries)
    position %= n
    if system.entries[position] != r:
        raise NotDeaugmentable(
            f"entry {position} is not the exceptional class of ray {ray}"
        )
    merged = list(system.entries)
    merged[(position - 1) % n] = merged[(position - 1) % n] + r
    merged[(position + 1) % n] = merged[(position + 1) % n] + r
    del merged[position]
    rel = x.blow_down(ray)
    for a in merged:
        if a.dot(r) != 0:
            raise NotDeaugmentable(
                "a merged entry is not orthogonal to the exceptional class"
            )
    try:
        down = ToricSystem.validate(rel.below, [rel.pushdown(a) for a in merged])
    except (BadIntersection, BadCanonicalSum, BadLength) as exc:
        raise NotDeaugmentable(str(exc)) from exc
    return down, r


def is_exceptional(system: ToricSystem) -> bool:
    """No backwards morphisms: every consecutive segment sum A_i + ... + A_j
    with j < n has totally vanishing cohomology of its negative.  (The segment
    equals E_{j+1} - E_i for the associated bundle sequence.)"""
    entries = system.entries
    n = len(entries)
    for i in range(n - 1):
        seg = entries[i]
        for j in range(i, n - 1):
            if j > i:
                seg = seg + entries[j]
            if not vanishes_totally(-seg):
                return False
    return True


# Hirzebruch surfaces ---------------------------------------------------------


@dataclass(frozen=True)
class HirzebruchSystemClass:
    """Classification label of a toric system on a Hirzebruch surface F_r.

    kind "A": (P, iP + Q, P, -(r+i)P + Q); kind "Atilde" (r even, S = Q - r/2 P):
    (S, P + iS, S, P - iS).  P is a fibre class (P^2 = 0, P.Q = 1, Q^2 = r).
    """

    kind: str
    r: int
    i: int
    basis: tuple[DivisorClass, DivisorClass]

    def is_exceptional_class(self) -> bool:
        """Which labels carry exceptional systems: every A_{r,i}; Atilde for
        r = 0 (the two rulings are interchangeable) or i = 0, where
        Atilde_{r,0} is a rotation of A_{r,-r/2}.  For even r >= 2 and i != 0
        some backwards segment becomes effective and exceptionality fails."""
        if self.kind == "A":
            return True
        return self.r == 0 or self.i == 0


def hirzebruch_pq(x: ToricSurface) -> tuple[DivisorClass, DivisorClass, int]:
    """The standard (P, Q) basis of Pic(F_r) for any 4-ray presentation:
    Q is the class of a ray of maximal self-intersection r, P its successor."""
    if x.n != 4:
        raise BadLength(f"{x} is not a Hirzebruch surface")
    r = max(x.selfints)
    s = x.selfints.index(r)
    q = x.divisor(s)
    p = x.divisor((s + 1) % 4)
    assert p.square() == 0 and q.square() == r and p.dot(q) == 1
    return p, q, r


def hirzebruch_system(kind: str, r: int, i: int) -> ToricSystem:
    """Build the labelled system on TV(r, 0, -r, 0)."""
    x = from_selfints((r, 0, -r, 0))
    p, q, _ = hirzebruch_pq(x)
    if kind == "A":
        entries = (p, i * p + q, p, -(r + i) * p + q)
    elif kind == "Atilde":
        if r % 2 != 0:
            raise ValueError("Atilde systems need even r")
        s = q - (r // 2) * p
        entries = (s, p + i * s, s, p - i * s)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return ToricSystem.validate(x, entries)


def classify_hirzebruch(system: ToricSystem) -> HirzebruchSystemClass:
    """Identify (kind, r, i) matching the system up to rotation and mirror.

    Every toric system on F_r is of kind A or Atilde up to these symmetries,
    and the labels themselves are orbit-level only: mirroring identifies
    A_{r,i} with A_{r,-(r+i)} and Atilde_{r,i} with Atilde_{r,-i}, so the
    larger i is returned.  A miss means a bug, reported as Unclassifiable.
    """
    x = system.surface
    p, q, r = hirzebruch_pq(x)
    s = q - (r // 2) * p if r % 2 == 0 else None

    def decompose(c: DivisorClass) -> tuple[int, int]:
        # c = alpha P + beta Q with beta = c.P, alpha = c.Q - r c.P
        beta = c.dot(p)
        alpha = c.dot(q) - r * beta
        assert c == alpha * p + beta * q
        return alpha, beta

    for image in system.symmetry_images():
        b = image.entries
        if b[0] == p and b[2] == p:
            alpha, beta = decompose(b[1])
            if beta == 1 and b[3] == -(r + alpha) * p + q:
                return HirzebruchSystemClass("A", r, max(alpha, -(r + alpha)), (p, q))
    if s is not None:
        for image in system.symmetry_images():
            b = image.entries
            if b[0] == s and b[2] == s:
                # b[1] = gamma P + delta S with delta = b1.P, gamma = b1.S
                delta = b[1].dot(p)
                gamma = b[1].dot(s)
                if gamma == 1 and b[1] == p + delta * s and b[3] == p - delta * s:
                    return HirzebruchSystemClass("Atilde", r, abs(delta), (p, q))
    raise Unclassifiable(f"no Hirzebruch label matches {system}")
