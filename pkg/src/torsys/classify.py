"""Constructibility and fullness certification for exceptional toric systems.

A system is constructible when some chain of de-augmentations lands on an
exceptional toric system on a Hirzebruch surface; constructible systems are
automatically full.  Non-constructible ones are attacked with a bounded
breadth-first search over spherical twists at invariant (-2)-curves: if some
twisted image is constructible, the original sequence is full as well, and the
certificate records the twists plus a replayable de-augmentation witness.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .isometry import RankOutOfRange, orbit, weyl_group
from .surface import DivisorClass, FanAutomorphism, ToricSurface
from .systems import (
    HirzebruchSystemClass,
    LineBundleSequence,
    NotDeaugmentable,
    ToricSystem,
    _augment_at_ray,
    classify_hirzebruch,
    deaugment,
    from_sequence,
    is_exceptional,
    standard_system,
)
from .twist import NotALineBundle, TwistByCurve, minus_two_rays, twist_cases, twist_sequence


class NotExceptionalInput(ValueError):
    """The operation is only defined for exceptional systems / sequences."""


@dataclass(frozen=True)
class DeaugmentationStep:
    """One reversed augmentation: on ``surface``, the entry at ``position``
    equals the class of the contractible ray ``ray``."""

    surface: ToricSurface
    ray: int
    position: int
    exceptional: DivisorClass


@dataclass(frozen=True)
class ConstructibilityWitness:
    """Machine-checkable witness: de-augmentation steps from the input system
    down to an exceptional Hirzebruch base system.  Replaying the augmentations
    in reverse reproduces the input exactly."""

    base_system: ToricSystem
    base_class: HirzebruchSystemClass
    steps: tuple[DeaugmentationStep, ...]

    def replay(self) -> ToricSystem:
        system = self.base_system
        for step in reversed(self.steps):
            system = _augment_at_ray(system, step.ray, step.position)
            assert system.surface.selfints == step.surface.selfints
        return system


@dataclass(frozen=True)
class TwistApplication:
    """A twist at one (-2)-ray together with the per-entry case record."""

    curve_ray: int
    cases: tuple[int, ...]

    @property
    def applied_positions(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.cases) if c == 1)


@dataclass(frozen=True)
class FullnessCertificate:
    """Fullness verdict for a bundle sequence.

    verdict "full": ``twists`` applied in order map the sequence to one whose
    toric system carries ``witness``; empty twists means directly
    constructible.  verdict "unknown" is an honest miss of the bounded search,
    with the search limits recorded in ``notes``.
    """

    verdict: str
    twists: tuple[TwistApplication, ...]
    witness: ConstructibilityWitness | None
    final_sequence: LineBundleSequence | None
    notes: tuple[str, ...] = ()


class _Memo:
    """Shared search memo.  Failures are cached up to rotation/mirror of the
    sequence (the expensive exhaustive searches); successes are cached under
    the exact sequence so stored witnesses replay bit-exactly.
    Concurrent readers are safe; inserts are idempotent."""

    def __init__(self):
        self.false_keys: set = set()
        self.witnesses: dict = {}


def is_constructible(
    system: ToricSystem, _memo: _Memo | None = None
) -> ConstructibilityWitness | None:
    """Search all de-augmentation chains for a witness; None when none exists.

    The input must be exceptional.  At every level, each contractible ray i
    whose class [D_i] occurs as an entry is tried (rays ascending, positions
    ascending, first witness wins); the recursion bottoms out on Hirzebruch
    surfaces, where the label classification decides.
    """
    if not is_exceptional(system):
        raise NotExceptionalInput("constructibility is defined for exceptional systems")
    return _search(system, _memo if _memo is not None else _Memo())


def _search(system: ToricSystem, memo: _Memo) -> ConstructibilityWitness | None:
    x = system.surface
    if x.n == 4:
        label = classify_hirzebruch(system)
        exceptional = label.is_exceptional_class()
        # the label rule must agree with the cohomological test
        assert exceptional == is_exceptional(system)
        if exceptional:
            return ConstructibilityWitness(system, label, ())
        return None
    if x.n < 4:
        return None  # no Hirzebruch surface below the minimal ones
    exact = system.key()
    if exact in memo.witnesses:
        return memo.witnesses[exact]
    canon = system.canonical_key()
    if canon in memo.false_keys:
        return None
    for ray in x.contractible_rays():
        r = x.divisor(ray)
        for position, entry in enumerate(system.entries):
            if entry != r:
                continue
            try:
                sub, _ = deaugment(system, position, ray)
            except NotDeaugmentable:
                continue
            if not is_exceptional(sub):
                raise AssertionError(
                    "de-augmentation of an exceptional system went non-exceptional"
                )
            sub_witness = _search(sub, memo)
            if sub_witness is not None:
                step = DeaugmentationStep(x, ray, position, r)
                witness = ConstructibilityWitness(
                    sub_witness.base_system,
                    sub_witness.base_class,
                    (step,) + sub_witness.steps,
                )
                memo.witnesses[exact] = witness
                return witness
    memo.false_keys.add(canon)
    return None


def certify_full(
    seq: LineBundleSequence, max_depth: int = 3, _memo: _Memo | None = None
) -> FullnessCertificate:
    """Certify fullness of an exceptional bundle sequence.

    Directly constructible sequences certify with no twists.  Otherwise a
    breadth-first search composes up to ``max_depth`` twists at invariant
    (-2)-rays (skipping compositions that leave the line-bundle world) and
    certifies on the first constructible image.  A miss returns "unknown".
    """
    memo = _memo if _memo is not None else _Memo()
    system = from_sequence(seq)
    if not is_exceptional(system):
        raise NotExceptionalInput("fullness certification needs an exceptional sequence")
    witness = _search(system, memo)
    if witness is not None:
        return FullnessCertificate("full", (), witness, seq)
    x = seq.surface
    rays = minus_two_rays(x)
    notes = (
        f"twist search depth <= {max_depth}",
        "forward twists at torus-invariant (-2)-curves only",
    )
    if x.n == 3:
        notes += (
            "constructibility is defined relative to Hirzebruch bases; the 3-ray surface has none",
        )
    frontier: list[tuple[LineBundleSequence, tuple[TwistApplication, ...]]] = [(seq, ())]
    seen = {seq.key()}
    for _ in range(max_depth):
        new_frontier = []
        for current, trail in frontier:
            for ray in rays:
                t = TwistByCurve(x, ray)
                try:
                    twisted = twist_sequence(t, current)
                except NotALineBundle:
                    continue
                key = twisted.key()
                if key in seen:
                    continue
                seen.add(key)
                application = TwistApplication(ray, twist_cases(t, current))
                twisted_system = from_sequence(twisted)
                assert is_exceptional(twisted_system)
                witness = _search(twisted_system, memo)
                if witness is not None:
                    return FullnessCertificate(
                        "full", trail + (application,), witness, twisted
                    )
                new_frontier.append((twisted, trail + (application,)))
        frontier = new_frontier
    return FullnessCertificate("unknown", (), None, None, notes)


@dataclass(frozen=True)
class OrbitReport:
    """Classification of the Weyl orbit of the standard toric system."""

    surface: ToricSurface
    total: int
    exceptional_count: int
    constructible_count: int
    nonconstructible: tuple[ToricSystem, ...]
    automorphism_pairing: tuple[tuple[int, int, FanAutomorphism], ...]


def orbit_report(x: ToricSurface, threads: int | None = None) -> OrbitReport:
    """Apply the whole K-isometry (= Weyl) group to the standard system and
    classify every image; non-constructible ones are paired up under fan
    automorphisms.  Deterministic regardless of thread count."""
    if not 3 <= x.pic_rank <= 5:
        raise RankOutOfRange(
            f"orbit reports support Picard rank 3..5, got {x.pic_rank}"
        )
    systems = orbit(standard_system(x), weyl_group(x))
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flags = list(pool.map(is_exceptional, systems))
    else:
        flags = [is_exceptional(s) for s in systems]
    exceptional = [s for s, f in zip(systems, flags) if f]
    memo = _Memo()
    nonconstructible = [
        s for s in exceptional if _search(s, memo) is None
    ]
    pairing = []
    autos = [f for f in x.fan_automorphisms() if not f.is_identity()]
    for i, a in enumerate(nonconstructible):
        for j, b in enumerate(nonconstructible):
            if i == j:
                continue
            for f in autos:
                image = ToricSystem.validate(x, tuple(f.apply(e) for e in a.entries))
                if image == b:
                    pairing.append((i, j, f))
                    break
    return OrbitReport(
        surface=x,
        total=len(systems),
        exceptional_count=len(exceptional),
        constructible_count=len(exceptional) - len(nonconstructible),
        nonconstructible=tuple(nonconstructible),
        automorphism_pairing=tuple(pairing),
    )
