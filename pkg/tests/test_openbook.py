"""Open book moves: stabilization, destabilization, surgery."""

import pytest

from openbook_lab import mcg
from openbook_lab.curves import (IsotopyArc, ClosedCurve, CurveSystem,
                                 isotopic, geometric_intersection)
from openbook_lab.mcg import act_equally, basis_arcs, twist, identity
from openbook_lab.openbook import (make_book, stabilize, destabilize,
                                   legendrian_surgery, monodromy_image,
                                   cocore_arc, pinch_off_handle)
from openbook_lab.surface import build_surface, CombSurface


def disc_book():
    return make_book(CombSurface.disc())


def disc_with_sigma():
    surf = CombSurface.disc()
    surf, m0 = surf.insert_mark(0, 0)
    surf, m1 = surf.insert_mark(0, 1)
    book = make_book(surf)
    return book, IsotopyArc(surf, m0, m1, ())


def test_stabilize_disc_gives_annulus_hopf_book():
    book, sigma = disc_with_sigma()
    book2, move = stabilize(book, sigma, sign=1)
    s = book2.surface
    assert (s.genus, s.n_boundary) == (0, 2)
    assert move.s_curve.word in ((1,), (-1,))
    # s is isotopic to the annulus core: crosses the co-core once
    book3, g = cocore_arc(book2, move)
    assert geometric_intersection(
        ClosedCurve(book3.surface, move.s_curve.word), g) == 1
    assert len(book2.monodromy.word) == 1
    assert book2.monodromy.word[0].power == 1


def test_stabilize_negative_sign():
    book, sigma = disc_with_sigma()
    book2, move = stabilize(book, sigma, sign=-1)
    assert book2.monodromy.word[0].power == -1


def test_euler_drop_and_boundary_change():
    book, sigma = disc_with_sigma()
    book2, _ = stabilize(book, sigma)
    assert book2.surface.euler_characteristic() == \
        book.surface.euler_characteristic() - 1


def test_inclusion_is_identity_on_arcs():
    # an arc disjoint from the feet keeps its crossing word
    surf = CombSurface.disc()
    surf, m0 = surf.insert_mark(0, 0)
    surf, m1 = surf.insert_mark(0, 1)
    surf, a0 = surf.insert_mark(0, 2)
    surf, a1 = surf.insert_mark(0, 3)
    g = IsotopyArc(surf, a0, a1, ())
    book = make_book(surf, gamma=(g,))
    sigma = IsotopyArc(surf, m0, m1, ())
    book2, _ = stabilize(book, sigma)
    assert book2.gamma[0].word == ()
    assert book2.gamma[0].endpoints() == (a0, a1)


def test_stabilize_rejects_feet_on_collection():
    surf = CombSurface.disc()
    surf, m0 = surf.insert_mark(0, 0)
    surf, m1 = surf.insert_mark(0, 1)
    g = IsotopyArc(surf, m0, m1, ())
    book = make_book(surf, gamma=(g,))
    with pytest.raises(ValueError):
        stabilize(book, g)


def test_destabilize_round_trip():
    book, sigma = disc_with_sigma()
    book2, move = stabilize(book, sigma, sign=1)
    book3, g = cocore_arc(book2, move)
    book3 = book3.with_gamma(book3.gamma + (g,))
    book4 = destabilize(book3, g)
    s = book4.surface
    assert (s.genus, s.n_boundary) == (0, 1)
    assert book4.monodromy.is_identity_word()
    assert book4.gamma == ()


def test_destabilize_annulus_tau_to_disc():
    # (annulus, tau) destabilized at the co-core -> (disc, id)
    book, sigma = disc_with_sigma()
    book2, move = stabilize(book, sigma, sign=1)
    book3, g = cocore_arc(book2, move)
    book3 = book3.with_gamma((g,))
    book4 = destabilize(book3, g)
    assert book4.surface.euler_characteristic() == 1
    assert book4.monodromy.is_identity_word()


def test_destabilize_requires_factorization():
    book, sigma = disc_with_sigma()
    book2, move = stabilize(book, sigma, sign=1)
    book3, g = cocore_arc(book2, move)
    # compose an extra twist about a curve crossing the handle: the head
    # twist no longer matches
    c = ClosedCurve(book3.surface, move.s_curve.word)
    phi2 = mcg.compose(twist(c, 1), mcg.compose(twist(c, 1),
                                                identity(book3.surface)))
    bad = make_book(book3.surface, phi2, (g,))
    with pytest.raises(ValueError):
        destabilize(bad, g)


def test_monodromy_image_identity_reverses():
    surf = CombSurface.disc()
    surf, m0 = surf.insert_mark(0, 0)
    surf, m1 = surf.insert_mark(0, 1)
    g = IsotopyArc(surf, m0, m1, ())
    book = make_book(surf, gamma=(g,))
    img = monodromy_image(book, g)
    assert img.endpoints() == (m1, m0)
    assert isotopic(img, g)


def test_monodromy_image_requires_membership():
    surf = CombSurface.disc()
    surf, m0 = surf.insert_mark(0, 0)
    surf, m1 = surf.insert_mark(0, 1)
    g = IsotopyArc(surf, m0, m1, ())
    book = make_book(surf, gamma=())
    with pytest.raises(ValueError):
        monodromy_image(book, g)


def annulus_book(power=0, marks=0):
    surf = build_surface(0, 2)
    ms = []
    comps = surf.boundary_components()
    for k in range(marks):
        seg = surf.sides[comps[k % 2][0]][1]
        surf, m = surf.insert_mark(seg, 0)
        ms.append(m)
    phi = identity(surf) if power == 0 else twist(ClosedCurve(surf, (1,)),
                                                  power)
    return make_book(surf, phi), ms


def test_surgery_composes_positive_twist():
    book, _ = annulus_book(0)
    L = ClosedCurve(book.surface, (1,))
    book = book.with_l_system(CurveSystem(closed=(L,)))
    after = legendrian_surgery(book)
    assert len(after.monodromy.word) == 1
    assert after.monodromy.word[0].power == 1
    # composing the inverse twist recovers the original action
    undone = mcg.compose(twist(L, -1), after.monodromy)
    assert act_equally(undone, book.monodromy)


def test_surgery_requires_single_closed_curve():
    book, _ = annulus_book(0)
    with pytest.raises(ValueError):
        legendrian_surgery(book)


def test_surgery_rejects_null_homotopic():
    book, _ = annulus_book(0)
    with pytest.raises(ValueError):
        CurveSystem(closed=(ClosedCurve(book.surface, (1, -1)),))


def test_pinch_off_handle():
    assert pinch_off_handle((1, 2, -1), 2) == ()
    assert pinch_off_handle((1, 3, 2), 3) == (1, 2)
    assert pinch_off_handle((2, -2), 2) == ()


def test_arrangement_pushes_images_off_marks():
    # (annulus, tau^-1) with the co-core in the collection
    surf = build_surface(0, 2)
    comps = surf.boundary_components()
    seg0 = surf.sides[comps[0][0]][1]
    seg1 = surf.sides[comps[1][0]][1]
    surf, m0 = surf.insert_mark(seg0, 0)
    surf, m1 = surf.insert_mark(seg1, 0)
    g = IsotopyArc(surf, m0, m1, ())
    book = make_book(surf, twist(ClosedCurve(surf, (1,)), -1), gamma=(g,))
    surf2, strands, slivers = book.arrangement_data()
    assert ("g", 0) in strands and ("d", 0) in strands
    assert len(slivers) == 2
    # negative stabilization: image departs left, designated signs negative
    assert all(sign == -1 for _m, _m2, sign, _i in slivers)
    signs = book.boundary_signs()
    assert signs[m0] == -1 and signs[m1] == -1


def test_arrangement_positive_twist_signs():
    surf = build_surface(0, 2)
    comps = surf.boundary_components()
    seg0 = surf.sides[comps[0][0]][1]
    seg1 = surf.sides[comps[1][0]][1]
    surf, m0 = surf.insert_mark(seg0, 0)
    surf, m1 = surf.insert_mark(seg1, 0)
    g = IsotopyArc(surf, m0, m1, ())
    book = make_book(surf, twist(ClosedCurve(surf, (1,)), 1), gamma=(g,))
    assert all(s == 1 for s in book.boundary_signs().values())


def test_canonical_key_pools_rotated_copies():
    b1, _ = annulus_book(1)
    b2, _ = annulus_book(1)
    assert b1.canonical_key() == b2.canonical_key()
    b3, _ = annulus_book(-1)
    assert b1.canonical_key() != b3.canonical_key()
