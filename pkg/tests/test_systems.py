import random

import pytest

from torsys import from_selfints
from torsys.systems import (
    BadCanonicalSum,
    BadIntersection,
    BadLength,
    LineBundleSequence,
    NotDeaugmentable,
    ToricSystem,
    associated_surface,
    augment,
    classify_hirzebruch,
    deaugment,
    from_sequence,
    hirzebruch_system,
    is_exceptional,
    standard_system,
    to_sequence,
)

import rank5


def test_standard_system_is_valid():
    for selfints in [(1, 1, 1), (2, 0, -2, 0), rank5.SELFINTS]:
        x = from_selfints(selfints)
        s = standard_system(x)
        assert len(s) == x.k0_rank
        assert s.squares() == x.selfints


def test_validate_errors():
    f1 = from_selfints((1, 0, -1, 0))
    with pytest.raises(BadLength):
        ToricSystem.validate(f1, [f1.divisor(0), f1.divisor(1), f1.divisor(2)])
    # break an intersection: swap two entries of the standard system
    d = [f1.divisor(i) for i in range(4)]
    with pytest.raises(BadIntersection):
        ToricSystem.validate(f1, [d[0], d[2], d[1], d[3]])
    # break the canonical sum, keeping the intersection pattern
    p2 = from_selfints((1, 1, 1))
    line = p2.divisor(0)
    with pytest.raises(BadCanonicalSum):
        ToricSystem.validate(p2, [-1 * line, -1 * line, -1 * line])
    with pytest.raises(BadIntersection):
        ToricSystem.validate(p2, [line, line, 2 * line])


def test_hirzebruch_systems_validate():
    for r in range(4):
        for i in range(-3, 4):
            hirzebruch_system("A", r, i)
            if r % 2 == 0:
                hirzebruch_system("Atilde", r, i)


def test_sequence_round_trip():
    x = rank5.surface()
    s = standard_system(x)
    seq = to_sequence(s)
    assert from_sequence(seq) == s
    assert to_sequence(from_sequence(seq)) == seq


def test_from_sequence_p2():
    p2 = from_selfints((1, 1, 1))
    line = p2.divisor(0)
    seq = LineBundleSequence.of([p2.zero_class(), line, 2 * line])
    s = from_sequence(seq)
    assert all(a == line for a in s.entries)


def test_printed_system_matches_its_sequence():
    a = rank5.printed_system()
    assert to_sequence(a) == rank5.printed_sequence()
    assert from_sequence(rank5.printed_sequence()) == a


def test_associated_surface():
    x = rank5.surface()
    assert associated_surface(standard_system(x)).selfints == x.selfints
    for r in range(4):
        for i in range(-4, 5):
            a = hirzebruch_system("A", r, i)
            assert associated_surface(a) == from_selfints((abs(r + 2 * i), 0, -abs(r + 2 * i), 0))
            if r % 2 == 0:
                at = hirzebruch_system("Atilde", r, i)
                assert associated_surface(at) == from_selfints((abs(2 * i), 0, -abs(2 * i), 0))


def test_rotate_mirror():
    x = rank5.surface()
    s = standard_system(x)
    assert s.rotate(len(s)) == s
    assert s.mirror().mirror() == s
    for k in range(len(s)):
        r = s.rotate(k)
        # still a valid toric system
        ToricSystem.validate(x, r.entries)
        assert associated_surface(r).normalized == associated_surface(s).normalized


def test_rotate_mirror_preserve_exceptionality():
    a = rank5.printed_system()
    assert is_exceptional(a)
    for k in range(len(a)):
        assert is_exceptional(a.rotate(k))
    assert is_exceptional(a.mirror())
    # and on a sample of the orbit, including non-exceptional members
    from torsys.isometry import orbit, weyl_group

    x = rank5.surface()
    systems = orbit(standard_system(x), weyl_group(x))
    rng = random.Random(6)
    for _ in range(12):
        s = systems[rng.randrange(len(systems))]
        flag = is_exceptional(s)
        k = rng.randrange(1, len(s))
        assert is_exceptional(s.rotate(k)) == flag
        assert is_exceptional(s.mirror()) == flag


def test_augment_p2():
    p2 = from_selfints((1, 1, 1))
    line = p2.divisor(0)
    s = ToricSystem.validate(p2, [line, line, line])
    for p in range(3):
        out = augment(s, p, 1)
        assert len(out) == 4
        assert out.squares() == (0, -1, 0, 1)
        assert associated_surface(out) == from_selfints((1, 0, -1, 0))
        r = out.surface.divisor(out.surface.selfints.index(-1))
        assert out.entries[1] == r


def test_augment_deaugment_round_trip():
    rng = random.Random(2)
    for selfints in [(1, 1, 1), (1, 0, -1, 0), (-1, -1, -1, 0, 0)]:
        x = from_selfints(selfints)
        s = standard_system(x)
        for _ in range(10):
            p = rng.randrange(x.n)
            j = rng.randrange(x.n + 1)
            big = augment(s, p, j)
            # the inserted ray sits at index p + 1 by construction
            sub, r = deaugment(big, j, p + 1)
            assert sub == s
            assert r == big.surface.divisor(p + 1)


def test_deaugment_standard_system():
    x = rank5.surface()
    s = standard_system(x)
    for ray in x.contractible_rays():
        sub, _ = deaugment(s, ray, ray)
        assert sub == standard_system(sub.surface)


def test_deaugment_errors():
    x = rank5.surface()
    s = standard_system(x)
    with pytest.raises(NotDeaugmentable):
        deaugment(s, 0, 0)  # ray 0 has self-intersection -2
    with pytest.raises(NotDeaugmentable):
        deaugment(s, 2, 1)  # entry 2 is not the class of ray 1


def test_is_exceptional_examples():
    p2 = from_selfints((1, 1, 1))
    line = p2.divisor(0)
    assert is_exceptional(ToricSystem.validate(p2, [line, line, line]))
    for r in range(4):
        for i in range(-4, 5):
            assert is_exceptional(hirzebruch_system("A", r, i))
    assert is_exceptional(hirzebruch_system("Atilde", 0, 3))
    assert is_exceptional(hirzebruch_system("Atilde", 2, 0))
    assert not is_exceptional(hirzebruch_system("Atilde", 2, 1))
    assert not is_exceptional(hirzebruch_system("Atilde", 4, -2))


def test_classify_hirzebruch():
    c = classify_hirzebruch(hirzebruch_system("A", 3, 0))
    assert (c.kind, c.r, c.i) == ("A", 3, 0)
    # the overlap case: Atilde_{2,0} is a rotation of A_{2,-1}
    c = classify_hirzebruch(hirzebruch_system("Atilde", 2, 0))
    assert (c.kind, c.r, c.i) == ("A", 2, -1)
    c = classify_hirzebruch(hirzebruch_system("Atilde", 2, 2))
    assert (c.kind, c.r, c.i) == ("Atilde", 2, 2)
    # classification is orbit-level
    for k in range(4):
        a = hirzebruch_system("A", 3, 2)
        c1 = classify_hirzebruch(a.rotate(k))
        c2 = classify_hirzebruch(a.mirror().rotate(k))
        assert (c1.kind, c1.r, c1.i) == ("A", 3, 2)
        assert (c2.kind, c2.r, c2.i) == ("A", 3, 2)


def test_augmentation_preserves_exceptionality_seeded():
    # seeded mix of exceptional and non-exceptional systems
    rng = random.Random(4)
    from torsys.isometry import weyl_group, orbit

    pool = []
    for selfints in [(-1, -1, -1, 0, 0), (-2, -1, -2, -1, 0, 0)]:
        x = from_selfints(selfints)
        pool.extend(orbit(standard_system(x), weyl_group(x)))
    checked = 0
    for _ in range(60):
        s = pool[rng.randrange(len(pool))]
        p = rng.randrange(s.surface.n)
        j = rng.randrange(s.surface.n + 1)
        big = augment(s, p, j)
        assert is_exceptional(big) == is_exceptional(s)
        checked += 1
    assert checked == 60
