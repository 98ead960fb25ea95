"""Augmented abstract open books and their structural moves.

A book is a page (surface), a monodromy (twist word), an oriented arc
collection, and an optional curve system of surgery curves.  The three
moves are stabilization (attach a 1-handle at the ends of an arc sigma and
compose with the twist about sigma joined to the handle core),
destabilization (the inverse, only for handles whose creation the book
remembers), and Legendrian surgery (compose one positive twist about a
page curve).

Monodromy images of the collection arcs follow the convention that an
image carries the opposite orientation; for intersection bookkeeping each
image endpoint is pushed off its source mark to a fresh adjacent mark on
the side the image departs toward, so that boundary points of the
collection become designated sliver pairs with a sign and arcs never share
exact endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import mcg, planar
from .curves import IsotopyArc, ClosedCurve, CurveSystem, isotopic
from .mcg import MappingClass, TwistGenerator
from .words import reduce_word, inverse, cyclic_key


@dataclass(frozen=True)
class StabilizationMove:
    """Record of one (de)stabilization-capable handle attachment.

    ``sigma_word`` and the foot data reconstruct the move on the base
    surface; ``s_curve`` is the stabilizing curve (sigma joined to the
    handle core) on the stabilized surface, and ``sign`` is +1 for a
    positive stabilization, -1 for a negative one.
    """

    sigma_word: tuple
    sigma_marks: tuple
    foot_sides: tuple
    handle: object
    s_curve: ClosedCurve
    sign: int

    @property
    def cut_index(self):
        return self.handle.cut_index

    def relabeled(self, relabel, surface):
        new_s = ClosedCurve(surface,
                            cyclic_key(tuple(relabel(l)
                                             for l in self.s_curve.word)))
        return replace(self, s_curve=new_s,
                       sigma_word=tuple(relabel(l) for l in self.sigma_word))


class AugmentedOpenBook:
    """(page, monodromy, oriented arc collection, optional curve system)."""

    __slots__ = ("surface", "monodromy", "gamma", "l_system", "history",
                 "_cache")

    def __init__(self, surface, monodromy, gamma=(), l_system=None,
                 history=()):
        self.surface = surface
        self.monodromy = monodromy.included_in(surface)
        self.gamma = tuple(replace(g, surface=surface) for g in gamma)
        if l_system is None:
            l_system = CurveSystem()
        self.l_system = l_system
        self.history = tuple(history)
        self._cache = {}
        marks = surface.all_marks()
        seen = set()
        for g in self.gamma:
            if not {g.start, g.end} <= marks:
                raise ValueError("collection arc endpoints must be marks")
            if {g.start, g.end} & seen:
                raise ValueError("collection arcs may not share marks")
            seen |= {g.start, g.end}
            if not g.canonical:
                raise ValueError("collection arcs must be canonical")

    def with_l_system(self, l_system):
        return AugmentedOpenBook(self.surface, self.monodromy, self.gamma,
                                 l_system, self.history)

    def with_gamma(self, gamma):
        return AugmentedOpenBook(self.surface, self.monodromy, gamma,
                                 self.l_system, self.history)

    def __repr__(self):
        return (f"AugmentedOpenBook({self.surface!r}, "
                f"|phi|={len(self.monodromy.word)}, "
                f"|gamma|={len(self.gamma)})")

    # -- images and the pushed arrangement data ---------------------------

    def image_raw(self, g: IsotopyArc) -> IsotopyArc:
        """phi(g) at the source marks, source orientation."""
        return mcg.apply(self.monodromy, replace(g, surface=self.surface))

    def arrangement_data(self):
        """The pushed image collection: (enriched surface, strands dict,
        designated sliver pairs).

        Strands are keyed ("g", i) for collection arcs and ("d", i) for
        image arcs (reversed orientation, endpoints at fresh marks pushed
        to the departure side).  Coincident images (identity-like
        monodromy on that arc) are dropped: the union collapses.  Sliver
        pairs are (source mark, image mark, sign, i) per surviving image
        endpoint.
        """
        if "arr" in self._cache:
            return self._cache["arr"]
        surf = self.surface
        raw = [self.image_raw(g) for g in self.gamma]
        pushed = []
        for i, g in enumerate(self.gamma):
            d = raw[i]
            if isotopic(d, g):
                pushed.append(None)
                continue
            sides = []
            for mark in (g.start, g.end):
                cmp = planar.local_departure(surf, mark, mark,
                                             g.spec, d.reversed().spec)
                assert cmp != 0, "non-isotopic image with parallel germ"
                sides.append("after" if cmp == 1 else "before")
            pushed.append(tuple(sides))

        marks = {}
        for i, g in enumerate(self.gamma):
            if pushed[i] is None:
                continue
            for mark, side in zip((g.start, g.end), pushed[i]):
                gap = (surf.gap_after(mark) if side == "after"
                       else surf.gap_before(mark))
                surf, m2 = surf.insert_mark(*gap)
                marks[(i, mark)] = m2

        strands = {}
        slivers = []
        for i, g in enumerate(self.gamma):
            strands[("g", i)] = replace(g, surface=surf).spec
            if pushed[i] is None:
                continue
            d = raw[i].reversed()  # opposite orientation convention
            img = IsotopyArc(surf, marks[(i, g.end)], marks[(i, g.start)],
                             d.word)
            strands[("d", i)] = img.spec
            for mark in (g.start, g.end):
                sign = planar.designated_sign(
                    surf, replace(g, surface=surf).spec, mark,
                    img.spec, marks[(i, mark)])
                slivers.append((mark, marks[(i, mark)], sign, i))
        out = (surf, strands, tuple(slivers))
        self._cache["arr"] = out
        return out

    def boundary_signs(self):
        """Designated sign at every endpoint of the collection; coincident
        (identity-image) arcs contribute nothing."""
        _surf, _strands, slivers = self.arrangement_data()
        return {mark: sign for mark, _m2, sign, _i in slivers}

    def canonical_key(self):
        """Hashable key invariant under polygon rotation and renaming;
        ignores history (used to pool search states)."""
        if "key" in self._cache:
            return self._cache["key"]
        surf = self.surface
        sides = surf.sides
        n = len(sides)
        best = None
        for r in range(n):
            names = {}
            shape = []
            mark_index = {}
            for k in range(n):
                s = sides[(r + k) % n]
                if s[0] == "b":
                    for m in surf.seg_marks[s[1]]:
                        mark_index[m] = len(mark_index)
                    shape.append(("b", len(surf.seg_marks[s[1]])))
                else:
                    _, c, sign = s
                    names.setdefault(c, len(names))
                    shape.append(("c", names[c], sign))

            def ren(word):
                return tuple((names[abs(l) - 1] + 1) * (1 if l > 0 else -1)
                             for l in word)

            mono = tuple((cyclic_key(ren(t.curve.word)), t.power)
                         for t in self.monodromy.word)
            gam = tuple(sorted((ren(g.word), mark_index[g.start],
                                mark_index[g.end]) for g in self.gamma))
            ls = tuple(sorted(
                [("a", ren(a.word), mark_index[a.start], mark_index[a.end])
                 for a in self.l_system.arcs]
                + [("c", cyclic_key(ren(c.word)))
                   for c in self.l_system.closed]))
            cand = (tuple(shape), mono, gam, ls)
            if best is None or cand < best:
                best = cand
        self._cache["key"] = best
        return best


def make_book(surface, monodromy=None, gamma=(), l_system=None):
    if monodromy is None:
        monodromy = mcg.identity(surface)
    return AugmentedOpenBook(surface, monodromy, gamma, l_system)


def monodromy_image(book: AugmentedOpenBook, g: IsotopyArc) -> IsotopyArc:
    """Canonical image of a collection arc, with the opposite orientation,
    in minimal position with the collection."""
    if not any(isotopic(g, x) and (g.start, g.end) == (x.start, x.end)
               for x in book.gamma):
        raise ValueError("arc is not in the book's collection")
    return book.image_raw(g).reversed()


def stabilize(book: AugmentedOpenBook, sigma: IsotopyArc, sign=1,
              foot_sides=("after", "before")):
    """Stabilize along the arc ``sigma``: attach a 1-handle at fresh gaps
    next to sigma's endpoints (on the given sides) and compose the
    monodromy with the ``sign`` twist about sigma joined to the handle
    core.  Returns (book, StabilizationMove).

    sigma's endpoint marks are consumed.  The inclusion of existing arc
    and curve encodings is the identity.
    """
    if sign not in (1, -1):
        raise ValueError("stabilization sign must be +1 or -1")
    surf = book.surface
    used = set()
    for g in book.gamma:
        used |= {g.start, g.end}
    for a in book.l_system.arcs:
        used |= {a.start, a.end}
    if {sigma.start, sigma.end} & used:
        raise ValueError("handle feet must avoid the collection and "
                         "surgery-system endpoints")
    if not sigma.canonical or not sigma.is_embedded():
        raise ValueError("stabilizing arc must be canonical and embedded")

    gap_a = (surf.gap_after(sigma.start) if foot_sides[0] == "after"
             else surf.gap_before(sigma.start))
    gap_b = (surf.gap_after(sigma.end) if foot_sides[1] == "after"
             else surf.gap_before(sigma.end))
    surf2, rec = surf.attach_handle(gap_a, gap_b)
    surf2 = surf2.remove_mark(sigma.start)
    surf2 = surf2.remove_mark(sigma.end)

    s_word = cyclic_key(tuple(sigma.word) + (-(rec.cut_index + 1),))
    s_curve = ClosedCurve(surf2, s_word)
    move = StabilizationMove(
        sigma_word=tuple(sigma.word),
        sigma_marks=(sigma.start, sigma.end),
        foot_sides=tuple(foot_sides),
        handle=rec, s_curve=s_curve, sign=sign)

    phi2 = mcg.compose(mcg.twist(s_curve, sign),
                       book.monodromy.included_in(surf2))
    book2 = AugmentedOpenBook(surf2, phi2, book.gamma, book.l_system,
                              book.history + (move,))
    return book2, move


def cocore_arc(book: AugmentedOpenBook, move: StabilizationMove):
    """A parallel copy of the co-core of a recorded handle, on a book
    surface enriched with two fresh marks on the handle's boundary
    segments.  Returns (book with enriched surface, arc)."""
    rec = move.handle
    surf = book.surface
    n1, n2 = rec.segs_a[1], rec.segs_a[2]
    surf, m0 = surf.insert_mark(n1, len(surf.seg_marks[n1]))
    surf, m1 = surf.insert_mark(n2, 0)
    book2 = AugmentedOpenBook(surf, book.monodromy, book.gamma,
                              book.l_system, book.history)
    return book2, IsotopyArc(surf, m0, m1, ())


def destabilize(book: AugmentedOpenBook, g: IsotopyArc) -> AugmentedOpenBook:
    """Undo the outermost stabilization whose handle has co-core ``g``.

    Requires the monodromy word to start with the +-or-1 power twist about
    a curve crossing that handle exactly once, and nothing else in the book
    to touch the handle.  ``g`` is removed from the collection (the other
    arcs keep their encodings)."""
    rec = None
    for h in book.surface.handles:
        cocore_segs = ({h.segs_a[1], h.segs_a[2]}, {h.segs_b[1], h.segs_b[2]})
        locs = {book.surface.mark_location(g.start)[0],
                book.surface.mark_location(g.end)[0]}
        if g.word == () and (locs <= cocore_segs[0] or locs <= cocore_segs[1]):
            rec = h
            break
    if rec is None:
        raise ValueError("arc is not a recorded handle co-core")
    k = rec.cut_index
    letter = k + 1
    word = book.monodromy.word
    if not word:
        raise ValueError("identity monodromy cannot be destabilized")
    head = word[0]
    if abs(head.power) != 1 or \
            sum(1 for l in head.curve.word if abs(l) == letter) != 1:
        raise ValueError("monodromy does not factor as a stabilization "
                         "twist about this handle")
    for t in word[1:]:
        if any(abs(l) == letter for l in t.curve.word):
            raise ValueError("deeper twists cross the handle")
    for x in book.gamma:
        if x is not g and (x.start, x.end, x.word) != (g.start, g.end, g.word):
            if any(abs(l) == letter for l in x.word):
                raise ValueError("another collection arc crosses the handle")
    for comp in book.l_system.components:
        if any(abs(l) == letter for l in comp.word):
            raise ValueError("surgery system crosses the handle")

    surf = book.surface.remove_mark(g.start).remove_mark(g.end)
    surf2, relabel = surf.detach_handle(k)

    def ren_arc(x):
        return IsotopyArc(surf2, x.start, x.end,
                          tuple(relabel(l) for l in x.word))

    def ren_curve(c):
        return ClosedCurve(surf2, cyclic_key(tuple(relabel(l)
                                                   for l in c.word)))

    phi2 = MappingClass(surf2, tuple(
        TwistGenerator(ren_curve(t.curve), t.power) for t in word[1:]))
    gamma2 = tuple(ren_arc(x) for x in book.gamma
                   if (x.start, x.end, x.word) != (g.start, g.end, g.word))
    ls2 = CurveSystem(tuple(ren_arc(a) for a in book.l_system.arcs),
                      tuple(ren_curve(c) for c in book.l_system.closed))
    hist2 = tuple(m.relabeled(relabel, surf2) for m in book.history
                  if m.cut_index != k)
    return AugmentedOpenBook(surf2, phi2, gamma2, ls2, hist2)


def legendrian_surgery(book: AugmentedOpenBook) -> AugmentedOpenBook:
    """Surgery along the single closed page curve of the book's system:
    compose one positive twist about it.  The pre-surgery book is
    recovered by composing the inverse twist."""
    if book.l_system.arcs or len(book.l_system.closed) != 1:
        raise ValueError("surgery needs exactly one closed page curve")
    L = book.l_system.closed[0]
    if L.is_null_homotopic():
        raise ValueError("surgery curve is null-homotopic")
    phi2 = mcg.compose(mcg.twist(L, 1), book.monodromy)
    return AugmentedOpenBook(book.surface, phi2, book.gamma, book.l_system,
                             book.history)


def pinch_off_handle(word, letter):
    """Crossing word after the pinch isotopy that slides a curve system off
    a stabilization handle: occurrences of the handle letter are erased."""
    return reduce_word(tuple(l for l in word if abs(l) != letter))
