"""Mapping class action: composition, conjugation, twist calibration."""

import random

import pytest

from openbook_lab import cover, mcg
from openbook_lab.curves import IsotopyArc, ClosedCurve, isotopic
from openbook_lab.mcg import (MappingClass, TwistGenerator, apply, compose,
                              invert, conjugate_twist, act_equally, twist,
                              basis_arcs, identity)
from openbook_lab.surface import build_surface
from openbook_lab.words import reduce_word


def curve_pool(surf, rng, size=6):
    """Simple closed curves: short words filtered for simplicity."""
    k = surf.cut_count
    pool = []
    seen = set()
    tries = 0
    while len(pool) < size and tries < 400:
        tries += 1
        n = rng.randrange(1, 3)
        w = reduce_word([rng.randrange(1, k + 1) * rng.choice((1, -1))
                         for _ in range(n)])
        c = ClosedCurve(surf, w)
        cw = c.word
        if not cw or cw in seen:
            continue
        if c.is_null_homotopic() or not c.is_simple():
            continue
        seen.add(cw)
        pool.append(ClosedCurve(surf, cw))
    return pool


def random_mapping_class(surf, pool, rng, maxlen=3):
    word = []
    for _ in range(rng.randrange(maxlen + 1)):
        word.append(TwistGenerator(rng.choice(pool), rng.choice((1, -1))))
    return MappingClass(surf, word)


SURFACES = [(0, 2), (0, 3), (1, 1), (1, 2)]


@pytest.mark.parametrize("g,b", SURFACES)
def test_action_homomorphism(g, b):
    surf0 = build_surface(g, b)
    surf, arcs = basis_arcs(surf0)
    rng = random.Random(31 * g + b)
    pool = curve_pool(surf, rng)
    if not pool:
        pytest.skip("no curves on this surface")
    for _ in range(50):
        phi = random_mapping_class(surf, pool, rng)
        psi = random_mapping_class(surf, pool, rng)
        x = rng.choice(arcs)
        lhs = apply(compose(phi, psi), x)
        rhs = apply(phi, apply(psi, x))
        assert lhs == rhs


@pytest.mark.parametrize("g,b", SURFACES)
def test_inverses(g, b):
    surf0 = build_surface(g, b)
    surf, arcs = basis_arcs(surf0)
    rng = random.Random(17 * g + b)
    pool = curve_pool(surf, rng)
    if not pool:
        pytest.skip("no curves on this surface")
    for _ in range(20):
        phi = random_mapping_class(surf, pool, rng)
        assert act_equally(compose(phi, invert(phi)), identity(surf), arcs)
        assert act_equally(invert(invert(phi)), phi, arcs)


def test_twist_fixes_its_curve():
    surf = build_surface(1, 1)
    for w in [(1,), (2,), (1, 2)]:
        c = ClosedCurve(surf, w)
        assert apply(twist(c, 1), c) == c
        assert apply(twist(c, -1), c) == c


def test_twist_powers_compose():
    surf0 = build_surface(1, 1)
    surf, arcs = basis_arcs(surf0)
    c = ClosedCurve(surf, (1,))
    for n in (2, 3, 4):
        multi = twist(c, n)
        once = MappingClass(surf, (TwistGenerator(c, 1),) * n)
        assert act_equally(multi, once, arcs)


@pytest.mark.parametrize("g,b", [(1, 1), (1, 2), (0, 3)])
def test_conjugation_law(g, b):
    # psi T_L psi^-1 acts like the twist about psi(L)
    surf0 = build_surface(g, b)
    surf, arcs = basis_arcs(surf0)
    rng = random.Random(5 * g + b)
    pool = curve_pool(surf, rng)
    if len(pool) < 2:
        pytest.skip("not enough curves")
    checked = 0
    for _ in range(40):
        psi = random_mapping_class(surf, pool, rng)
        L = rng.choice(pool)
        lhs = compose(compose(psi, twist(L, 1)), invert(psi))
        rhs = conjugate_twist(psi, L)
        assert act_equally(lhs, rhs, arcs)
        checked += 1
    assert checked == 40


def test_apply_requires_same_polygon():
    s1 = build_surface(0, 2)
    s2 = build_surface(1, 1)
    c = ClosedCurve(s1, (1,))
    phi = twist(c, 1)
    m = sorted(s2.all_marks() | {0, 1})
    with pytest.raises(ValueError):
        s2m, arcs = basis_arcs(s2)
        apply(phi, arcs[0])
