"""Exact curve combinatorics via the universal cover.

The complement of the cut system is a disc, so the universal cover of the
surface is a tree of polygon tiles indexed by reduced words in the free
group on the cut arcs: tile g meets tile g*x_i across the lift of cut arc
c_i.  A finite connected union of tiles is again a disc; its boundary
circle carries all lifted marks, cut-arc endpoints (corners) and ends of
lifted closed geodesics in a computable cyclic order.

Arcs in reduced position lift to chords between two boundary points of such
a disc, closed curves to lines between two ends, and every metric question
about minimal position becomes convex-position combinatorics:

* two lifts cross if and only if their endpoint pairs interleave;
* the sign of a crossing is read off the cyclic order of the four points;
* the order of crossings along a chord is the nesting order of the
  separating chords around an endpoint.

Geometric intersection numbers count linking lifts; Dehn twists act by
splicing conjugated copies of the twisting word at each crossing lift.
"""

from __future__ import annotations

from .words import (reduce_word, inverse, mul, prefixes, cyclic_reduce,
                    primitive_root, cyclic_key)


# ---------------------------------------------------------------------------
# boundary circle of a finite tile union


class CircleIndex:
    """Cyclic order of boundary points of a finite union of tiles.

    ``tiles`` must be connected (all our callers pass unions of geodesic
    paths through the identity tile).  ``rays`` maps an id to ``(base,
    direction)``: the half line starting in tile ``base`` and following the
    infinite reduced word ``direction`` repeated; its limit point is located
    strictly inside the exposed cut side through which it leaves the union.
    The union is enlarged until rays with distinct ends leave through
    distinct sides.
    """

    def __init__(self, surface, tiles, rays=None):
        self.surface = surface
        self.tiles = set(tiles)
        self.rays = dict(rays or {})
        if not self.tiles:
            self.tiles = {()}
        self._ray_exit = {}
        self._extend_for_rays()
        self._walk()
        self._locate_rays()

    # tile adjacency ------------------------------------------------------

    def _neighbor(self, tile, side_idx):
        kind, c, sign = self.surface.sides[side_idx]
        assert kind == "c"
        return mul(tile, (sign * (c + 1),))

    def _partner(self, tile, side_idx):
        kind, c, sign = self.surface.sides[side_idx]
        h = self._neighbor(tile, side_idx)
        return h, self.surface.cut_side_index(c, -sign)

    def _exposed(self, tile, side_idx):
        s = self.surface.sides[side_idx]
        return s[0] == "b" or self._neighbor(tile, side_idx) not in self.tiles

    # rays ----------------------------------------------------------------

    def _ray_tiles(self, base, direction, limit):
        """Successive tiles of a ray, up to ``limit`` steps."""
        t = base
        out = [t]
        i = 0
        while len(out) <= limit:
            t = mul(t, (direction[i % len(direction)],))
            out.append(t)
            i += 1
        return out

    def _ray_exit_side(self, base, direction):
        """(tile, side index) of the exposed side the ray leaves through."""
        t = base
        i = 0
        if t not in self.tiles:
            raise ValueError("ray base outside tile set")
        while True:
            step = direction[i % len(direction)]
            t2 = mul(t, (step,))
            if t2 not in self.tiles:
                c = abs(step) - 1
                sign = 1 if step > 0 else -1
                return t, self.surface.cut_side_index(c, sign)
            t = t2
            i += 1

    def _extend_for_rays(self):
        if not self.rays:
            return
        for base, _d in self.rays.values():
            self.tiles.add(base)
        for _ in range(64):
            exits = {}
            clash = False
            for rid, (base, d) in self.rays.items():
                e = self._ray_exit_side(base, d)
                exits.setdefault(e, []).append(rid)
            for ids in exits.values():
                if len(ids) < 2:
                    continue
                for i in range(len(ids)):
                    for j in range(i + 1, len(ids)):
                        if not self._same_end(ids[i], ids[j]):
                            clash = True
                            for rid in (ids[i], ids[j]):
                                base, d = self.rays[rid]
                                self.tiles.update(
                                    self._ray_tiles(base, d,
                                                    self._depth_bound()))
            if not clash:
                return
        raise RuntimeError("rays failed to separate")

    def _depth_bound(self):
        n = max((len(d) for _b, d in self.rays.values()), default=1)
        m = max((len(b) for b, _d in self.rays.values()), default=1)
        return 2 * (n + m) + 8

    def _same_end(self, r1, r2):
        b1, d1 = self.rays[r1]
        b2, d2 = self.rays[r2]
        limit = len(b1) + len(b2) + 2 * len(d1) * len(d2) + 4
        return (self._ray_tiles(b1, d1, limit)[-1]
                == self._ray_tiles(b2, d2, limit)[-1])

    def _locate_rays(self):
        for rid, (base, d) in self.rays.items():
            item = self._ray_exit_side(base, d)
            self._ray_exit[rid] = self.item_index[item]

    # the walk --------------------------------------------------------------

    def _walk(self):
        sides = self.surface.sides
        n = len(sides)
        start = None
        for g in sorted(self.tiles):
            for j in range(n):
                if self._exposed(g, j):
                    start = (g, j)
                    break
            if start:
                break
        assert start is not None

        def next_item(g, j):
            j2 = (j + 1) % n
            if sides[j2][0] == "c" and self._neighbor(g, j2) in self.tiles:
                h, pj = self._partner(g, j2)
                out = (h, (pj + 1) % n)
                assert sides[out[1]][0] == "b"
                return out
            return (g, j2)

        items = [start]
        cur = next_item(*start)
        while cur != start:
            items.append(cur)
            cur = next_item(*cur)
        self.items = items
        self.item_index = {it: k for k, it in enumerate(items)}
        if len(self.item_index) != len(items):
            raise RuntimeError("boundary walk revisited an item")

        # junction (corner) registry: corner class -> index k, meaning the
        # corner sits between items[k] and items[k+1]
        self.corner_junction = {}
        for k, (g, j) in enumerate(items):
            cls = self._corner_class(g, (j + 1) % n)
            self.corner_junction[cls] = k

    def _corner_class(self, g, i):
        """Canonical id of the corner at the start of side i of tile g."""
        sides = self.surface.sides
        n = len(sides)
        cands = [(g, i)]
        if sides[i][0] == "c" and self._neighbor(g, i) in self.tiles:
            h, pj = self._partner(g, i)
            cands.append((h, (pj + 1) % n))
        j = (i - 1) % n
        if sides[j][0] == "c" and self._neighbor(g, j) in self.tiles:
            h, pj = self._partner(g, j)
            cands.append((h, pj))
        return min(cands)

    # positions --------------------------------------------------------------

    def mark_pos(self, tile, mark):
        seg, rank = self.surface.mark_location(mark)
        idx = self.item_index.get((tile, self.surface.side_index("b", seg)))
        if idx is None:
            raise KeyError(f"tile {tile} not walked for mark {mark}")
        return (idx, (1, rank))

    def corner_pos(self, tile, corner_idx):
        cls = self._corner_class(tile, corner_idx)
        k = self.corner_junction.get(cls)
        if k is None:
            raise KeyError(f"corner {(tile, corner_idx)} not on boundary")
        return (k, (2,))

    def ray_pos(self, rid):
        return (self._ray_exit[rid], (1, 0))


# cyclic-order primitives on positions --------------------------------------


def ccw_between(a, x, b):
    """Is x strictly inside the ccw interval from a to b?"""
    if x == a or x == b:
        return False
    if a == b:
        return True
    if a < b:
        return a < x < b
    return x > a or x < b


def interleaved(p1, q1, p2, q2):
    """Do chords (p1,q1) and (p2,q2) cross (as chords of the circle)?"""
    if len({p1, q1, p2, q2}) < 4:
        return False
    return ccw_between(p1, p2, q1) != ccw_between(p1, q2, q1)


def cross_sign(p1, q1, p2, q2):
    """Sign of the crossing of oriented chords p1->q1 and p2->q2: +1 when
    the frame (first tangent, second tangent) is positively oriented, i.e.
    the ccw order is (p1, p2, q1, q2)."""
    assert interleaved(p1, q1, p2, q2)
    return 1 if ccw_between(p1, p2, q1) else -1


def ccw_rank_from(P, pos):
    """Total order of circle positions starting just after P.

    For crossings of a chord (P -> Q) by pairwise disjoint chords, ranking
    each by the position of its endpoint inside ccw(P, Q) gives their order
    along the chord from P (nested separators sort inside out)."""
    return (pos <= P, pos)


# ---------------------------------------------------------------------------
# strand specifications

# arc spec:   ("arc", word, start_mark, end_mark)   lift: chord from
#             (tile g, start_mark) to (tile g*word, end_mark)
# loop spec:  ("loop", word)  closed curve, word cyclically reduced


def loop_line_ends(spec_word, h, ridbase):
    """Ray descriptors for the two ends of the line h * axis(word)."""
    w = tuple(spec_word)
    return {(ridbase, +1): (h, w), (ridbase, -1): (h, inverse(w))}


def _loop_normalized(word):
    w = cyclic_reduce(word)
    if not w:
        raise ValueError("null-homotopic curve has no line")
    return w


def chord_candidates(word_a, word_b):
    """Deck elements g for which the lift g * (second object) can meet the
    base lift of the first: both tile paths must share a tile."""
    out = []
    seen = set()
    for p in prefixes(word_a):
        for q in prefixes(word_b):
            g = mul(p, inverse(q))
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def line_cosets(word_a, loop_word):
    """Candidate cosets g*<loop> whose line can meet the base object with
    tile path prefixes(word_a); deduplicated by coset."""
    w = _loop_normalized(loop_word)
    cands = chord_candidates(word_a, w)
    out = []
    keys = set()
    for g in cands:
        k = coset_key(g, w)
        if k not in keys:
            keys.add(k)
            out.append(g)
    return out


def coset_key(g, w):
    """Canonical representative of the coset g*<w>, w cyclically reduced."""
    best = tuple(g)
    cur = tuple(g)
    for _ in range(len(g) // max(1, len(w)) + 2):
        cur = mul(cur, w)
        if (len(cur), cur) < (len(best), best):
            best = cur
    cur = tuple(g)
    for _ in range(len(g) // max(1, len(w)) + 2):
        cur = mul(cur, inverse(w))
        if (len(cur), cur) < (len(best), best):
            best = cur
    return best


def double_orbit_key(g, wleft, wright):
    """Canonical key of the double coset <wleft> g <wright>."""
    reps = set()
    cur = tuple(g)
    span = len(g) + len(wleft) + 2
    lefts = [()]
    acc = ()
    for _ in range(span // max(1, len(wleft)) + 2):
        acc = mul(acc, wleft)
        lefts.append(acc)
        lefts.append(inverse(acc))
    for l in lefts:
        reps.add(coset_key(mul(l, g), wright))
    return min(reps, key=lambda t: (len(t), t))


# ---------------------------------------------------------------------------
# crossing enumeration


def _cache(surface, key, fn):
    c = surface._cache
    if key not in c:
        c[key] = fn()
    return c[key]


def arc_arc_crossings(surface, arc_a, arc_b):
    """Crossings of two arcs in minimal position.

    Returns a tuple of (g, sign) pairs: the lift g*B of the second arc
    crosses the base lift of the first, with the given orientation sign
    (+1 when (tangent of a, tangent of b) is positively oriented).
    """
    key = ("aa", arc_a, arc_b)

    def run():
        _, wa, sa, ea = arc_a
        _, wb, sb, eb = arc_b
        cands = chord_candidates(wa, wb)
        tiles = set(prefixes(wa))
        for g in cands:
            for q in prefixes(wb):
                tiles.add(mul(g, q))
        ci = CircleIndex(surface, tiles)
        P, Q = ci.mark_pos((), sa), ci.mark_pos(tuple(wa), ea)
        out = []
        for g in cands:
            Pb = ci.mark_pos(g, sb)
            Qb = ci.mark_pos(mul(g, wb), eb)
            if interleaved(P, Q, Pb, Qb):
                out.append((g, cross_sign(P, Q, Pb, Qb)))
        return tuple(out)

    return _cache(surface, key, run)


def arc_is_embedded(surface, arc):
    """Whether the reduced arc word admits an embedded representative:
    no two of its own lifts link."""
    key = ("emb", arc)

    def run():
        _, w, s, e = arc
        cands = [g for g in chord_candidates(w, w) if g != ()]
        tiles = set(prefixes(w))
        for g in cands:
            for q in prefixes(w):
                tiles.add(mul(g, q))
        ci = CircleIndex(surface, tiles)
        P, Q = ci.mark_pos((), s), ci.mark_pos(tuple(w), e)
        for g in cands:
            Pb, Qb = ci.mark_pos(g, s), ci.mark_pos(mul(g, w), e)
            if interleaved(P, Q, Pb, Qb):
                return False
        return True

    return _cache(surface, key, run)


def arc_loop_crossings(surface, arc, loop_word):
    """Crossings of an arc with a simple closed curve, as (h, sign) pairs:
    the line h*axis(loop) crosses the base lift of the arc; sign is the
    orientation of (tangent of arc, tangent of curve).  Ordered along the
    arc from its start."""
    key = ("al", arc, tuple(loop_word))

    def run():
        _, wa, sa, ea = arc
        w = _loop_normalized(loop_word)
        cosets = line_cosets(wa, w)
        tiles = set(prefixes(wa))
        rays = {}
        for i, h in enumerate(cosets):
            for q in prefixes(w):
                tiles.add(mul(h, q))
                tiles.add(mul(h, inverse(q)))
            rays[(i, +1)] = (h, w)
            rays[(i, -1)] = (h, inverse(w))
        ci = CircleIndex(surface, tiles, rays)
        P, Q = ci.mark_pos((), sa), ci.mark_pos(tuple(wa), ea)
        out = []
        for i, h in enumerate(cosets):
            Ep = ci.ray_pos((i, +1))
            Em = ci.ray_pos((i, -1))
            if interleaved(P, Q, Em, Ep):
                sign = cross_sign(P, Q, Em, Ep)
                upos = Em if ccw_between(P, Em, Q) else Ep
                out.append((ccw_rank_from(P, upos), h, sign))
        out.sort(key=lambda t: t[0])
        return tuple((h, sign) for _k, h, sign in out)

    return _cache(surface, key, run)


def loop_is_simple(surface, loop_word):
    """Whether the cyclic word admits an embedded (simple) representative."""
    w = _loop_normalized(loop_word)
    key = ("ls", w)

    def run():
        root, n = primitive_root(w)
        if n > 1:
            return False
        cands = [g for g in line_cosets(w, w) if coset_key(g, w) != ()]
        tiles = set(prefixes(w))
        rays = {("base", +1): ((), w), ("base", -1): ((), inverse(w))}
        for i, h in enumerate(cands):
            for q in prefixes(w):
                tiles.add(mul(h, q))
                tiles.add(mul(h, inverse(q)))
            rays[(i, +1)] = (h, w)
            rays[(i, -1)] = (h, inverse(w))
        ci = CircleIndex(surface, tiles, rays)
        B1, B2 = ci.ray_pos(("base", +1)), ci.ray_pos(("base", -1))
        for i in range(len(cands)):
            if interleaved(B1, B2, ci.ray_pos((i, +1)), ci.ray_pos((i, -1))):
                return False
        return True

    return _cache(surface, key, run)


def loop_loop_count(surface, loop_a, loop_b):
    """Geometric intersection number of two (simple) closed curves."""
    wa = _loop_normalized(loop_a)
    wb = _loop_normalized(loop_b)
    key = ("ll", wa, wb)

    def run():
        cands = line_cosets(wa, wb)
        tiles = set(prefixes(wa))
        rays = {("base", +1): ((), wa), ("base", -1): ((), inverse(wa))}
        for i, h in enumerate(cands):
            for q in prefixes(wb):
                tiles.add(mul(h, q))
                tiles.add(mul(h, inverse(q)))
            rays[(i, +1)] = (h, wb)
            rays[(i, -1)] = (h, inverse(wb))
        ci = CircleIndex(surface, tiles, rays)
        B1, B2 = ci.ray_pos(("base", +1)), ci.ray_pos(("base", -1))
        orbits = set()
        for i, h in enumerate(cands):
            if interleaved(B1, B2, ci.ray_pos((i, +1)), ci.ray_pos((i, -1))):
                orbits.add(double_orbit_key(h, wa, wb))
        return len(orbits)

    return _cache(surface, key, run)


# ---------------------------------------------------------------------------
# departures at marks (veering comparisons)


def compare_departures(surface, mark, spec1, spec2):
    """Compare two arcs leaving the same mark.

    ``spec`` is (word, far_mark) read from the shared mark outward.  Returns
    -1 if the first departs strictly closer to the forward boundary
    direction (counterclockwise side), +1 if the second does, 0 if the
    words and far marks agree."""
    w1, m1 = spec1
    w2, m2 = spec2
    if (tuple(w1), m1) == (tuple(w2), m2):
        return 0
    key = ("dep", mark, tuple(w1), m1, tuple(w2), m2)

    def run():
        tiles = set(prefixes(w1)) | set(prefixes(w2))
        ci = CircleIndex(surface, tiles)
        P = ci.mark_pos((), mark)
        F1 = ci.mark_pos(tuple(w1), m1)
        F2 = ci.mark_pos(tuple(w2), m2)
        if F1 == F2:
            return 0
        return -1 if ccw_rank_from(P, F1) < ccw_rank_from(P, F2) else 1

    return _cache(surface, key, run)


# ---------------------------------------------------------------------------
# Dehn twist action


def twist_path(surface, loop_word, power, path_word, path_kind, marks=None):
    """Image of a path under the ``power``-th Dehn twist about a simple
    closed curve.

    ``path_kind`` is "arc" (path_word read between marks=(start, end)) or
    "loop" (cyclic word; a corner of the base tile serves as basepoint, the
    result is defined up to conjugacy and returned cyclically reduced).

    At every minimal-position crossing with the twisting curve the path is
    rerouted once around it; in deck-group terms the image word is the
    product of the conjugated twisting loops, in crossing order along the
    path, followed by the original word.  A right-handed (positive) twist
    reroutes with the sign of (tangent of curve, tangent of path) at the
    crossing.
    """
    w = _loop_normalized(loop_word)
    wp = tuple(path_word)
    if power == 0:
        return wp

    cosets = line_cosets(wp, w)
    tiles = set(prefixes(wp))
    rays = {}
    for i, h in enumerate(cosets):
        for q in prefixes(w):
            tiles.add(mul(h, q))
            tiles.add(mul(h, inverse(q)))
        rays[(i, +1)] = (h, w)
        rays[(i, -1)] = (h, inverse(w))
    ci = CircleIndex(surface, tiles, rays)

    if path_kind == "arc":
        P = ci.mark_pos((), marks[0])
        Q = ci.mark_pos(tuple(wp), marks[1])
    else:
        P = Q = None
        for corner in range(len(surface.sides)):
            P = ci.corner_pos((), corner)
            Q = ci.corner_pos(tuple(wp), corner)
            if P != Q:
                break
        if P == Q:
            raise RuntimeError("no corner separates the loop basepoint")

    crossings = []
    for i, h in enumerate(cosets):
        Ep, Em = ci.ray_pos((i, +1)), ci.ray_pos((i, -1))
        if interleaved(P, Q, Em, Ep):
            # sign of (tangent of curve, tangent of path)
            sign = cross_sign(Em, Ep, P, Q)
            upos = Em if ccw_between(P, Em, Q) else Ep
            crossings.append((ccw_rank_from(P, upos), h, sign))
    crossings.sort(key=lambda t: t[0])

    letters = []
    for _k, h, sign in crossings:
        e = power * sign
        loop = mul(mul(h, _word_power(w, e)), inverse(h))
        letters.extend(loop)
    letters.extend(wp)
    out = reduce_word(letters)
    return cyclic_key(out) if path_kind == "loop" else out


def _word_power(w, e):
    if e >= 0:
        return tuple(w) * e
    return inverse(w) * (-e)


# ---------------------------------------------------------------------------
# tokens: crossing orders along the cut arcs


def cut_token_orders(surface, strands):
    """Order, along each cut arc, of all strand crossings through it.

    ``strands``: dict id -> spec (arc or loop).  Returns dict
    cut_index -> tuple of (strand id, letter position), read along the cut
    arc in the direction its ``+`` copy is traversed by the polygon
    boundary.  The ``-`` copy sees the reversed order.
    """
    per_cut = {}
    for sid, spec in strands.items():
        word = spec[1]
        for j, letter in enumerate(word):
            per_cut.setdefault(abs(letter) - 1, []).append((sid, j, letter))

    out = {}
    for c, occs in per_cut.items():
        xc = (c + 1,)
        tiles = {(), xc}
        rays = {}
        entries = []
        for sid, j, letter in occs:
            spec = strands[sid]
            word = tuple(spec[1])
            u = word[:j]
            if letter > 0:
                t = inverse(u)
            else:
                t = mul(xc, inverse(u))
            if spec[0] == "arc":
                for q in prefixes(word):
                    tiles.add(mul(t, q))
                entries.append(("arc", sid, j, t, spec))
            else:
                w = tuple(spec[1])
                for q in prefixes(w):
                    tiles.add(mul(t, q))
                    tiles.add(mul(t, inverse(q)))
                rays[(sid, j, +1)] = (t, w)
                rays[(sid, j, -1)] = (t, inverse(w))
                entries.append(("loop", sid, j, t, spec))
        ci = CircleIndex(surface, tiles, rays)

        side_idx = surface.cut_side_index(c, 1)
        nsides = len(surface.sides)
        E1 = ci.corner_pos((), side_idx)
        E2 = ci.corner_pos((), (side_idx + 1) % nsides)

        keyed = []
        for kind, sid, j, t, spec in entries:
            if kind == "arc":
                _, word, sm, em = spec
                A = ci.mark_pos(t, sm)
                B = ci.mark_pos(mul(t, tuple(word)), em)
            else:
                A = ci.ray_pos((sid, j, +1))
                B = ci.ray_pos((sid, j, -1))
            if ccw_between(E1, A, E2):
                u = A
            elif ccw_between(E1, B, E2):
                u = B
            else:
                raise RuntimeError("token chord does not cross its cut side")
            keyed.append((ccw_rank_from(E1, u), sid, j))
        keyed.sort(key=lambda t: t[0])
        if len({k for k, _s, _j in keyed}) != len(keyed):
            raise RuntimeError("ambiguous token order along a cut arc")
        out[c] = tuple((sid, j) for _k, sid, j in keyed)
    return out
