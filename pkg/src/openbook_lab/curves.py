"""Oriented properly embedded arcs and closed curves, up to isotopy.

Isotopies fix the endpoint marks, so the canonical representative of an arc
is its freely reduced crossing word together with its ordered endpoint
pair; a closed curve is a cyclically reduced cyclic word.  Reduced words
realize minimal position simultaneously for any family (they lift to
geodesic chords of the universal cover), which the brute-force oracle in
the test suite confirms on small surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import cover, planar
from .words import (reduce_word, is_reduced, inverse, cyclic_reduce,
                    cyclic_key, cyclic_rotations)


@dataclass(frozen=True)
class IsotopyArc:
    """Oriented properly embedded arc from ``start`` to ``end``.

    ``word`` is the sequence of signed cut-arc crossings; the arc is
    canonical when the word is freely reduced.  The orientation is the
    direction of travel from ``start`` to ``end``.
    """

    surface: object
    start: int
    end: int
    word: tuple = ()

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError("arcs are embedded: endpoints must differ")

    @property
    def canonical(self) -> bool:
        return is_reduced(self.word)

    @property
    def spec(self):
        return ("arc", tuple(self.word), self.start, self.end)

    def reversed(self) -> "IsotopyArc":
        return replace(self, start=self.end, end=self.start,
                       word=inverse(self.word))

    def is_embedded(self) -> bool:
        return cover.arc_is_embedded(self.surface, self.spec)

    def endpoints(self):
        return (self.start, self.end)


@dataclass(frozen=True)
class ClosedCurve:
    """Closed curve as a cyclic crossing word.

    ``essential`` distinguishes curves that are neither null-homotopic nor
    boundary-parallel; Dehn twisting and page-curve surgery only need the
    curve to be non-null-homotopic (a boundary-parallel curve still twists
    nontrivially rel boundary).
    """

    surface: object
    word: tuple

    @property
    def canonical(self) -> bool:
        return self.word == cyclic_key(self.word)

    @property
    def spec(self):
        return ("loop", tuple(self.word))

    def is_null_homotopic(self) -> bool:
        return len(cyclic_reduce(self.word)) == 0

    def is_boundary_parallel(self) -> bool:
        w = cyclic_key(self.word)
        for bw in self.surface.boundary_words():
            if w in (cyclic_key(bw), cyclic_key(inverse(bw))):
                return True
        return False

    @property
    def essential(self) -> bool:
        return not self.is_null_homotopic() and not self.is_boundary_parallel()

    def is_simple(self) -> bool:
        return cover.loop_is_simple(self.surface, self.word)

    def reversed(self) -> "ClosedCurve":
        return replace(self, word=cyclic_key(inverse(self.word)))


@dataclass(frozen=True)
class SignedPoint:
    """An intersection point of two oriented strands.

    ``location`` is ("interior", lift_tag) or ("boundary", mark_pair);
    ``sign`` is +1 when (tangent of the first owner, tangent of the second)
    matches the surface orientation.  ``owners`` names the two strands.
    """

    location: tuple
    sign: int
    owners: tuple


@dataclass(frozen=True)
class CurveSystem:
    """Disjoint union of embedded arcs and closed curves."""

    arcs: tuple = ()
    closed: tuple = ()

    def __post_init__(self):
        strands = list(self.arcs) + list(self.closed)
        for s in strands:
            if isinstance(s, IsotopyArc):
                if not s.is_embedded():
                    raise ValueError(f"arc {s.word} is not embedded")
            else:
                if s.is_null_homotopic():
                    raise ValueError("null-homotopic component")
                if not s.is_simple():
                    raise ValueError(f"curve {s.word} is not simple")
        for i in range(len(strands)):
            for j in range(i + 1, len(strands)):
                if geometric_intersection(strands[i], strands[j]) != 0:
                    raise ValueError("curve system components must be disjoint")

    @property
    def components(self):
        return tuple(self.arcs) + tuple(self.closed)

    def is_empty(self):
        return not self.arcs and not self.closed


# ---------------------------------------------------------------------------
# operations


def canonicalize(x):
    """Reduced (bigon-free) representative; idempotent."""
    if isinstance(x, IsotopyArc):
        return replace(x, word=reduce_word(x.word))
    if isinstance(x, ClosedCurve):
        return replace(x, word=cyclic_key(x.word))
    raise TypeError(type(x))


def isotopic(a, b) -> bool:
    """Isotopy rel marks: equality of canonical forms.  Closed curves are
    compared as unoriented cyclic words."""
    if isinstance(a, IsotopyArc) and isinstance(b, IsotopyArc):
        if a.surface is not b.surface and a.surface.sides != b.surface.sides:
            raise ValueError("arcs live on different surfaces")
        ca, cb = canonicalize(a), canonicalize(b)
        if (ca.start, ca.end, ca.word) == (cb.start, cb.end, cb.word):
            return True
        rb = cb.reversed()
        return (ca.start, ca.end, ca.word) == (rb.start, rb.end, rb.word)
    if isinstance(a, ClosedCurve) and isinstance(b, ClosedCurve):
        wa, wb = cyclic_key(a.word), cyclic_key(b.word)
        return wa == wb or wa == cyclic_key(inverse(b.word))
    return False


def geometric_intersection(a, b) -> int:
    """Number of interior intersection points in minimal position."""
    sa, sb = a.spec, b.spec
    surf = a.surface
    if sa[0] == "arc" and sb[0] == "arc":
        return len(cover.arc_arc_crossings(surf, sa, sb))
    if sa[0] == "arc":
        return len(cover.arc_loop_crossings(surf, sa, sb[1]))
    if sb[0] == "arc":
        return len(cover.arc_loop_crossings(surf, sb, sa[1]))
    return cover.loop_loop_count(surf, sa[1], sb[1])


def signed_interior_intersections(first, second):
    """All interior intersections of two internally disjoint oriented arc
    collections, with signs.

    Signs follow the frame convention: positive when (tangent of the first
    collection's arc, tangent of the second's) is positively oriented.
    """
    for col in (first, second):
        for a in col:
            if not a.canonical:
                raise ValueError("inputs must be canonical (minimal position)")
    for col in (first, second):
        for i in range(len(col)):
            for j in range(i + 1, len(col)):
                if geometric_intersection(col[i], col[j]) != 0:
                    raise ValueError("collection is not internally disjoint")
    out = []
    for a in first:
        for b in second:
            if a.spec == b.spec:
                continue
            for g, sign in cover.arc_arc_crossings(a.surface, a.spec, b.spec):
                out.append(SignedPoint(("interior", (a.spec, b.spec, g)),
                                       sign, (a, b)))
    return out


def boundary_point_sign(gamma: IsotopyArc, delta: IsotopyArc, e) -> int:
    """Sign of the designated boundary intersection of ``gamma`` and
    ``delta`` at ``e``.

    ``e`` is an endpoint mark of ``gamma``; ``delta`` must end at the same
    mark or at an adjacent one (the discrete stand-in for a shared
    endpoint).  The sign is the orientation of (tangent of gamma, tangent
    of delta) at the collapsed point; 0 when the germs are parallel.
    """
    if e not in gamma.endpoints():
        raise ValueError("e is not an endpoint of the first arc")
    d_end = None
    for m in delta.endpoints():
        if m == e or _adjacent_marks(gamma.surface, e, m):
            d_end = m
            break
    if d_end is None:
        raise ValueError("arcs do not share an endpoint region")
    return planar.designated_sign(gamma.surface, gamma.spec, e,
                                  delta.spec, d_end)


def _adjacent_marks(surface, a, b):
    for comp in surface.marks_in_boundary_order():
        if a in comp and b in comp:
            ia, ib = comp.index(a), comp.index(b)
            n = len(comp)
            return (ia - ib) % n in (1, n - 1)
    return False
