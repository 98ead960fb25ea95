"""The cut-open polygon as an explicit disc with strands as chords.

Cutting the surface along its cut system leaves one disc D whose boundary
circle carries, in cyclic order: the polygon corners, the marks on each
boundary segment, and, on each cut side copy, the crossing points of every
strand through that cut arc (the *tokens*, ordered by the universal-cover
kernel; the ``-`` copy sees the reverse of the ``+`` copy order).

A strand (arc or closed curve) decomposes into *pieces*: chords of D
between consecutive boundary points.  Two chords cross exactly when their
endpoints interleave on the circle, which reproduces minimal position
because the token orders come from the geodesic realization.  All local
data (rotation at marks, crossing signs, order of crossings along a piece)
reduces to cyclic-order arithmetic on circle indices.
"""

from __future__ import annotations

from . import cover
from .words import inverse


class DiscModel:
    """Circle order and strand pieces for a set of strands.

    ``strands``: dict id -> spec, spec = ("arc", word, start_mark, end_mark)
    or ("loop", word).  Point descriptors on the circle:

    * ("m", mark)                   a mark on a boundary segment
    * ("t", sid, j, pm)             strand sid's j-th crossing, on the
                                    ``pm`` copy of its cut side
    * ("corner", i)                 the corner before polygon side i
    """

    def __init__(self, surface, strands):
        self.surface = surface
        self.strands = dict(strands)
        self.token_order = cover.cut_token_orders(surface, self.strands)
        pts = []
        for i, side in enumerate(surface.sides):
            pts.append(("corner", i))
            if side[0] == "b":
                for m in surface.seg_marks[side[1]]:
                    pts.append(("m", m))
            else:
                _, c, sign = side
                toks = self.token_order.get(c, ())
                if sign < 0:
                    toks = tuple(reversed(toks))
                for sid, j in toks:
                    pts.append(("t", sid, j, sign))
        self.points = pts
        self.index = {p: k for k, p in enumerate(pts)}
        self.n = len(pts)

    # circle arithmetic -----------------------------------------------------

    def pos(self, pdesc):
        return self.index[pdesc]

    def ccw_between(self, a, x, b):
        if x == a or x == b:
            return False
        if a == b:
            return True
        if a < b:
            return a < x < b
        return x > a or x < b

    def interleaved(self, p1, q1, p2, q2):
        if len({p1, q1, p2, q2}) < 4:
            return False
        return self.ccw_between(p1, p2, q1) != self.ccw_between(p1, q2, q1)

    def cross_sign(self, p1, q1, p2, q2):
        return 1 if self.ccw_between(p1, p2, q1) else -1

    def rank_from(self, base, x):
        return (x - base) % self.n

    # strand pieces ----------------------------------------------------------

    def pieces(self, sid):
        """Oriented pieces of a strand: list of (point desc, point desc).

        Arc pieces run from start mark to end mark; loop pieces are cyclic,
        starting at the strand's first crossing."""
        spec = self.strands[sid]
        word = spec[1]
        if spec[0] == "arc":
            _, w, sm, em = spec
            pts = [("m", sm)]
            for j, letter in enumerate(w):
                pm = 1 if letter > 0 else -1
                pts.append(("t", sid, j, pm))
                pts.append(("t", sid, j, -pm))
            pts.append(("m", em))
            return [(pts[2 * i], pts[2 * i + 1]) for i in range(len(w) + 1)]
        out = []
        w = word
        for j, letter in enumerate(w):
            pm = 1 if letter > 0 else -1
            nxt = (j + 1) % len(w)
            nl = w[nxt]
            npm = 1 if nl > 0 else -1
            out.append((("t", sid, j, -pm), ("t", sid, nxt, npm)))
        return out

    def endpoint_piece(self, sid, mark):
        """The piece of an arc strand at one of its marks, read outward:
        (position of the mark, position of the far end of that piece)."""
        spec = self.strands[sid]
        assert spec[0] == "arc"
        ps = self.pieces(sid)
        if spec[2] == mark and spec[3] == mark:
            raise ValueError("arc has equal endpoints")
        if spec[2] == mark:
            a, b = ps[0]
        elif spec[3] == mark:
            b, a = ps[-1]
        else:
            raise KeyError(f"arc {sid} has no endpoint at mark {mark}")
        return self.pos(a), self.pos(b)


def local_departure(surface, mark_a, mark_b, spec_a, spec_b):
    """Compare the germs of two arcs at coincident or adjacent marks.

    Both arcs must have an endpoint at their respective mark.  Returns -1
    when the first arc's germ hugs the forward (counterclockwise) boundary
    direction more tightly, +1 when the second does, 0 when the germs are
    parallel (equal words toward equal far marks).
    """
    dm = DiscModel(surface, {"A": spec_a, "B": spec_b})
    pa, fa = dm.endpoint_piece("A", mark_a)
    pb, fb = dm.endpoint_piece("B", mark_b)
    base = min(pa, pb, key=lambda p: p)  # measure from the earlier mark
    fa_t = dm.rank_from(base, fa)
    fb_t = dm.rank_from(base, fb)
    if fa == fb:
        return 0
    return -1 if fa_t < fb_t else 1


def designated_sign(surface, gamma_spec, gamma_end_mark, image_spec,
                    image_end_mark):
    """Sign of the designated boundary intersection of an oriented arc with
    an oriented image arc at coincident/adjacent endpoint marks.

    The sign is the orientation of the frame (tangent of the first arc,
    tangent of the second) at the collapsed point: positive exactly when
    the frame matches the surface orientation.  Returns 0 for parallel
    germs (degenerate, e.g. identity monodromy).
    """
    cmp = local_departure(surface, gamma_end_mark, image_end_mark,
                          gamma_spec, image_spec)
    if cmp == 0:
        return 0
    # or(d_gamma, d_image) = +1 iff the image's inward direction sits
    # counterclockwise of gamma's, i.e. gamma departs tighter (cmp == -1)
    orient = 1 if cmp == -1 else -1
    if gamma_spec[3] == gamma_end_mark:   # gamma arrives at the mark
        orient = -orient
    if image_spec[3] == image_end_mark:   # image arrives at the mark
        orient = -orient
    return orient
