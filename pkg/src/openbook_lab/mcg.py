"""Mapping classes as words in Dehn twists, acting on arcs and curves.

A mapping class is stored as its twist word (rightmost generator acts
first) and never normalized: equality is decided extensionally, by acting
on a basis of arcs, since a mapping class of a surface with boundary is
determined by what it does to any collection of arcs cutting the surface
into a disc.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import cover
from .curves import IsotopyArc, ClosedCurve, canonicalize
from .words import cyclic_key, inverse


@dataclass(frozen=True)
class TwistGenerator:
    """A power of the Dehn twist about a simple closed curve.

    Positive power is the right-handed twist.  The curve must not be
    null-homotopic; boundary-parallel curves are allowed (they twist
    nontrivially rel boundary, and the annulus monodromies all live there).
    """

    curve: ClosedCurve
    power: int = 1

    def __post_init__(self):
        if self.power == 0:
            raise ValueError("zero twist power")
        if self.curve.is_null_homotopic():
            raise ValueError("twist about a null-homotopic curve")
        if not self.curve.is_simple():
            raise ValueError("twist curves must be simple")

    def inverse(self):
        return replace(self, power=-self.power)


class MappingClass:
    """Composition of twist generators; the rightmost acts first."""

    __slots__ = ("surface", "word")

    def __init__(self, surface, word=()):
        self.surface = surface
        self.word = tuple(word)
        for t in self.word:
            if t.curve.surface.sides != surface.sides:
                raise ValueError("twist curve on a different surface")

    def __repr__(self):
        if not self.word:
            return "MappingClass(id)"
        return "MappingClass(" + " ".join(
            f"T{t.curve.word}^{t.power}" for t in self.word) + ")"

    def is_identity_word(self):
        return not self.word

    def on_surface(self, surface):
        """The same word read on a surface with the same polygon (for
        example one carrying extra marks)."""
        if surface.sides != self.surface.sides:
            raise ValueError("polygon mismatch")
        return self.included_in(surface)

    def included_in(self, surface):
        """Inclusion into a surface on which every twist word still makes
        sense (e.g. a stabilization: encodings are unchanged)."""
        top = max((abs(l) for t in self.word for l in t.curve.word),
                  default=0)
        if top > surface.cut_count:
            raise ValueError("twist word crosses a cut the surface lacks")
        return MappingClass(surface, tuple(
            TwistGenerator(ClosedCurve(surface, t.curve.word), t.power)
            for t in self.word))


def identity(surface) -> MappingClass:
    return MappingClass(surface, ())


def twist(curve: ClosedCurve, power: int = 1) -> MappingClass:
    return MappingClass(curve.surface, (TwistGenerator(curve, power),))


def apply(phi: MappingClass, x):
    """Canonical representative of the image of an arc or closed curve."""
    if isinstance(x, IsotopyArc):
        if x.surface.sides != phi.surface.sides:
            raise ValueError("arc does not live on the mapping class surface")
        w = tuple(x.word)
        for t in reversed(phi.word):
            w = cover.twist_path(x.surface, t.curve.word, t.power, w,
                                 "arc", (x.start, x.end))
        return canonicalize(replace(x, word=w))
    if isinstance(x, ClosedCurve):
        if x.surface.sides != phi.surface.sides:
            raise ValueError("curve does not live on the mapping class surface")
        w = cyclic_key(x.word)
        for t in reversed(phi.word):
            w = cover.twist_path(x.surface, t.curve.word, t.power, w, "loop")
        return canonicalize(replace(x, word=w))
    raise TypeError(type(x))


def compose(phi: MappingClass, psi: MappingClass) -> MappingClass:
    """phi after psi."""
    if phi.surface.sides != psi.surface.sides:
        raise ValueError("mapping classes on different surfaces")
    return MappingClass(phi.surface, tuple(phi.word) + tuple(psi.word))


def invert(phi: MappingClass) -> MappingClass:
    return MappingClass(phi.surface,
                        tuple(t.inverse() for t in reversed(phi.word)))


def conjugate_twist(psi: MappingClass, L: ClosedCurve) -> MappingClass:
    """The twist about psi(L): equal as a mapping class to psi T_L psi^-1."""
    if L.is_null_homotopic():
        raise ValueError("twist about a null-homotopic curve")
    return twist(apply(psi, L), 1)


# ---------------------------------------------------------------------------
# bases and extensional equality


def basis_arcs(surface):
    """A basis of arcs: one parallel push-off of each cut arc.

    Returns (enriched surface, tuple of arcs).  The copy of cut arc c runs
    just inside the polygon along the ``+`` side, between fresh marks on
    the two flanking boundary segments, so its crossing word is empty."""
    s = surface
    arcs = []
    n = len(s.sides)
    for c in range(s.cut_count):
        i = s.cut_side_index(c, 1)
        seg_b = s.sides[(i - 1) % n][1]
        seg_a = s.sides[(i + 1) % n][1]
        s, m0 = s.insert_mark(seg_b, len(s.seg_marks[seg_b]))
        s, m1 = s.insert_mark(seg_a, 0)
        arcs.append((m0, m1))
    return s, tuple(IsotopyArc(s, m0, m1, ()) for m0, m1 in arcs)


def act_equally(phi: MappingClass, psi: MappingClass, arcs=None) -> bool:
    """Extensional equality: equal images on a basis (or the given arcs)."""
    if arcs is None:
        surf, arcs = basis_arcs(phi.surface)
        phi = phi.on_surface(surf)
        psi = psi.on_surface(surf)
    for a in arcs:
        if apply(phi, a) != apply(psi, a):
            return False
    return True


def refactor_stabilization(phi: MappingClass, s: ClosedCurve, L: ClosedCurve):
    """Push an inverse twist about a base curve through a stabilization.

    ``s`` must cross exactly one recorded handle co-core, exactly once, and
    ``L`` must avoid that handle.  Then T_L^-1 T_s equals T_{T_L^-1(s)}
    T_L^-1, and the rewritten curve again crosses the handle once, so
    composing T_s (a stabilization) commutes with surgery along L up to
    re-basing the stabilizing curve.  Returns a witness dict with the
    rewritten curve and the handle letter; action equality is certified by
    the caller via :func:`act_equally`.
    """
    surf = s.surface
    handle_letters = {h.letter for h in surf.handles}
    counts = {}
    for letter in s.word:
        counts[abs(letter)] = counts.get(abs(letter), 0) + 1
    crossed = [l for l, n in counts.items() if l in handle_letters and n == 1]
    if not crossed:
        raise ValueError("curve does not cross a recorded handle exactly once")
    letter = crossed[0]
    if any(abs(l) == letter for l in L.word):
        raise ValueError("base curve crosses the stabilization handle")
    new_curve = apply(twist(L, -1), s)
    if sum(1 for l in new_curve.word if abs(l) == letter) != 1:
        raise ValueError("rewritten curve no longer crosses the handle once")
    return {
        "handle_letter": letter,
        "curve": new_curve,
        "left": compose(twist(L, -1), twist(s, 1)),
        "right": compose(twist(new_curve, 1), twist(L, -1)),
    }
