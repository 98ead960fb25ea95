"""Curves kernel against the independent geodesic oracle."""

import random

import pytest

from openbook_lab import cover
from openbook_lab.curves import (IsotopyArc, ClosedCurve, canonicalize,
                                 isotopic, geometric_intersection,
                                 signed_interior_intersections,
                                 boundary_point_sign)
from openbook_lab.surface import build_surface
from openbook_lab.words import reduce_word, inverse

from geodesic_oracle import oracle_intersection, oracle_is_embedded


def surface_with_marks(g, b, per_seg=1):
    """Canonical surface with ``per_seg`` marks on every boundary segment."""
    s = build_surface(g, b)
    for seg in sorted(s.seg_marks):
        for _ in range(per_seg):
            s, _m = s.insert_mark(seg, 0)
    return s


def random_word(rng, k, maxlen):
    n = rng.randrange(maxlen + 1)
    out = []
    for _ in range(n):
        c = rng.randrange(1, k + 1) * rng.choice((1, -1))
        if out and out[-1] == -c:
            c = -c
        out.append(c)
    return reduce_word(out)


def random_arc_specs(rng, surf, count, maxlen):
    marks = sorted(surf.all_marks())
    k = surf.cut_count
    out = []
    tries = 0
    while len(out) < count and tries < count * 60:
        tries += 1
        sm, em = rng.sample(marks, 2)
        w = random_word(rng, k, maxlen)
        spec = ("arc", w, sm, em)
        if oracle_is_embedded(surf, spec):
            out.append(spec)
    return out


SURFACES = [(0, 2), (0, 3), (0, 4), (1, 1), (1, 2)]


@pytest.mark.parametrize("g,b", SURFACES)
def test_intersections_match_oracle(g, b):
    rng = random.Random(1000 * g + b)
    surf = surface_with_marks(g, b, per_seg=1)
    specs = random_arc_specs(rng, surf, 16, maxlen=4)
    pairs = 0
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            a, bb = specs[i], specs[j]
            if {a[2], a[3]} & {bb[2], bb[3]}:
                continue
            fast = len(cover.arc_arc_crossings(surf, a, bb))
            slow = oracle_intersection(surf, a, bb)
            assert fast == slow, (a, bb)
            # symmetry
            assert fast == len(cover.arc_arc_crossings(surf, bb, a))
            pairs += 1
    assert pairs >= 20


@pytest.mark.parametrize("g,b", SURFACES)
def test_embeddedness_matches_oracle(g, b):
    rng = random.Random(77 + 10 * g + b)
    surf = surface_with_marks(g, b, per_seg=1)
    marks = sorted(surf.all_marks())
    for _ in range(120):
        sm, em = rng.sample(marks, 2)
        w = random_word(rng, surf.cut_count, 4)
        spec = ("arc", w, sm, em)
        assert cover.arc_is_embedded(surf, spec) == \
            oracle_is_embedded(surf, spec), spec


def test_signs_match_oracle():
    rng = random.Random(5)
    surf = surface_with_marks(1, 1, per_seg=2)
    specs = random_arc_specs(rng, surf, 12, maxlen=4)
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            a, b = specs[i], specs[j]
            if {a[2], a[3]} & {b[2], b[3]}:
                continue
            fast = sorted(s for _g, s in cover.arc_arc_crossings(surf, a, b))
            slow = sorted(oracle_intersection(surf, a, b, signed=True))
            assert fast == slow


def test_canonicalize_idempotent_and_reduces():
    surf = surface_with_marks(1, 1)
    m = sorted(surf.all_marks())
    a = IsotopyArc(surf, m[0], m[1], (1, -1, 2))
    c = canonicalize(a)
    assert c.word == (2,)
    assert canonicalize(c) == c
    assert c.canonical
    loop = ClosedCurve(surf, (1, 2, -1))
    cl = canonicalize(loop)
    assert cl.word == canonicalize(cl).word
    # cyclic reduction conjugates away the trailing cancellation
    assert cl.word == (2,)


def test_isotopic_basics():
    surf = surface_with_marks(0, 3)
    m = sorted(surf.all_marks())
    a = IsotopyArc(surf, m[0], m[1], (1,))
    assert isotopic(a, a)
    b = IsotopyArc(surf, m[0], m[1], (2,))
    assert not isotopic(a, b)
    assert isotopic(a, a.reversed())
    c1 = ClosedCurve(surf, (1, 2))
    c2 = ClosedCurve(surf, (2, 1))
    assert isotopic(c1, c2)
    assert isotopic(c1, c1.reversed())


def test_twist_disjoint_curve_fixes_arc():
    # tau_s(gamma) = gamma when i(s, gamma) = 0
    surf = surface_with_marks(1, 1)
    m = sorted(surf.all_marks())
    for w_arc in [(), (1,), (2, 1)]:
        spec = ("arc", w_arc, m[0], m[1])
        if not cover.arc_is_embedded(surf, spec):
            continue
        for s in [(1,), (2,), (1, 2)]:
            if len(cover.arc_loop_crossings(surf, spec, s)) == 0:
                img = cover.twist_path(surf, s, 1, w_arc, "arc",
                                       (m[0], m[1]))
                assert img == tuple(w_arc)


def test_reversing_arc_flips_signed_points():
    surf = surface_with_marks(1, 1, per_seg=2)
    rng = random.Random(9)
    specs = random_arc_specs(rng, surf, 10, maxlen=3)
    found = 0
    for i in range(len(specs)):
        for j in range(len(specs)):
            if i == j:
                continue
            a, b = specs[i], specs[j]
            if {a[2], a[3]} & {b[2], b[3]}:
                continue
            A = IsotopyArc(surf, a[2], a[3], a[1])
            B = IsotopyArc(surf, b[2], b[3], b[1])
            pts = signed_interior_intersections([A], [B])
            if not pts:
                continue
            found += 1
            rev = signed_interior_intersections([A.reversed()], [B])
            assert sorted(p.sign for p in rev) == \
                sorted(-p.sign for p in pts)
    assert found >= 3


def test_boundary_point_sign_mirror():
    # delta pushed off gamma to one side, germ staying on that side (no
    # interior crossing), against the mirror configuration: opposite signs
    surf = build_surface(0, 2)
    comps = surf.boundary_components()
    seg0 = surf.sides[comps[0][0]][1]
    seg1 = surf.sides[comps[1][0]][1]
    surf, p = surf.insert_mark(seg0, 0)
    surf, q_right = surf.insert_mark(seg0, 1)   # just after p
    surf, q_left = surf.insert_mark(seg0, 0)    # just before p
    surf, f1 = surf.insert_mark(seg1, 0)
    surf, f_before = surf.insert_mark(seg1, 0)  # ccw before f1
    surf, f_after = surf.insert_mark(*surf.gap_after(f1))
    gamma = IsotopyArc(surf, p, f1, ())
    d_ccw = IsotopyArc(surf, q_right, f_before, ())  # germ on ccw side
    d_cw = IsotopyArc(surf, q_left, f_after, ())     # mirror: cw side
    assert geometric_intersection(gamma, d_ccw) == 0
    assert geometric_intersection(gamma, d_cw) == 0
    s_ccw = boundary_point_sign(gamma, d_ccw, p)
    s_cw = boundary_point_sign(gamma, d_cw, p)
    assert {s_ccw, s_cw} == {1, -1}
    # reversing gamma flips the frame
    assert boundary_point_sign(gamma.reversed(), d_ccw, p) == -s_ccw


def test_intersection_with_loops():
    # alpha flanks cut 0 (a parallel push-off of the cut arc into the disc)
    surf = build_surface(1, 1)
    i = surf.cut_side_index(0, 1)
    n = len(surf.sides)
    seg_b = surf.sides[(i - 1) % n][1]
    seg_a = surf.sides[(i + 1) % n][1]
    surf, m0 = surf.insert_mark(seg_b, len(surf.seg_marks[seg_b]))
    surf, m1 = surf.insert_mark(seg_a, 0)
    alpha = IsotopyArc(surf, m0, m1, ())
    one = ClosedCurve(surf, (1,))
    two = ClosedCurve(surf, (2,))
    assert geometric_intersection(one, two) == 1
    assert geometric_intersection(one, one) == 0
    assert geometric_intersection(alpha, one) == 1
    assert geometric_intersection(alpha, two) == 0
