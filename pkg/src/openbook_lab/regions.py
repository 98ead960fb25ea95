"""Complementary regions of a collection together with its monodromy images.

The arrangement of the collection arcs and their pushed-off images is
assembled inside the cut-open polygon: strand pieces are chords of the
disc, crossings are endpoint interleavings, and the complement of the
strands in the surface is recovered by gluing the disc faces back across
the cut sides.  Each complementary component then knows its Euler
characteristic, its boundary walks, and its corner cycle, from which the
overtwisted-region conditions are decided:

1. corners alternate between designated boundary points (the sliver pairs
   where an image endpoint was pushed off its source mark) and negative
   interior crossings;
2. every interior crossing of the arrangement is a corner (isolation);
3. the region is the unique disc satisfying 1 and 2.

Properness of a region with respect to a curve system asks for a negative
corner into which every crossing of the system with the strands can be
slid along the corner's two strands without passing another crossing.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cover
from .curves import SignedPoint
from .planar import DiscModel


class PreconditionError(ValueError):
    """A boundary point of the collection is negative."""


# ---------------------------------------------------------------------------
# the arrangement graph


class _Arrangement:
    """Planar arrangement in the cut-open disc, glued into the surface."""

    def __init__(self, book, extra_strands=None):
        surf, strands, slivers = book.arrangement_data()
        self.book = book
        self.surface = surf
        self.strands = dict(strands)
        if extra_strands:
            self.strands.update(extra_strands)
        self.slivers = slivers
        self.sliver_pairs = {}
        for mark, m2, sign, i in slivers:
            self.sliver_pairs[frozenset((mark, m2))] = (sign, i)
        self.dm = DiscModel(surf, self.strands)
        self._build_graph()
        self._faces()
        self._glue()

    # graph ------------------------------------------------------------

    def _build_graph(self):
        dm = self.dm
        self.pieces = {}           # (sid, idx) -> (pA, pB) descriptors
        for sid in self.strands:
            for idx, (a, b) in enumerate(dm.pieces(sid)):
                self.pieces[(sid, idx)] = (a, b)

        # interior crossings
        self.crossings = {}        # ('x', pid1, pid2) -> sign (pid1 < pid2)
        events = {pid: [] for pid in self.pieces}
        for pid1 in sorted(self.pieces):
            a1, b1 = self.pieces[pid1]
            p1, q1 = dm.pos(a1), dm.pos(b1)
            for pid2 in sorted(self.pieces):
                if pid2 <= pid1 or pid2[0] == pid1[0]:
                    continue
                a2, b2 = self.pieces[pid2]
                p2, q2 = dm.pos(a2), dm.pos(b2)
                if not dm.interleaved(p1, q1, p2, q2):
                    continue
                sign = dm.cross_sign(p1, q1, p2, q2)
                v = ("x", pid1, pid2)
                self.crossings[v] = sign
                u1 = p2 if dm.ccw_between(p1, p2, q1) else q2
                u2 = p1 if dm.ccw_between(p2, p1, q2) else q1
                events[pid1].append((dm.rank_from(p1, u1), v))
                events[pid2].append((dm.rank_from(p2, u2), v))

        self._check_counts()

        # vertices: circle points, named by descriptor; crossings
        # edges: ('c', k) circle edge from point k to k+1; ('s', pid, j)
        # the j-th sub-edge of a piece
        self.edges = {}
        n = dm.n
        for k in range(n):
            self.edges[("c", k)] = (("pt", k), ("pt", (k + 1) % n))
        self.piece_chain = {}
        for pid, evs in events.items():
            evs.sort(key=lambda t: t[0])
            a, b = self.pieces[pid]
            chain = [("pt", self.dm.pos(a))] + [v for _r, v in evs] \
                + [("pt", self.dm.pos(b))]
            self.piece_chain[pid] = chain
            for j in range(len(chain) - 1):
                self.edges[("s", pid, j)] = (chain[j], chain[j + 1])

        # rotations (ccw lists of darts leaving each vertex)
        self.rot = {}
        for k in range(n):
            v = ("pt", k)
            out = [(("c", k), 1)]
            # at most one strand piece ends at a circle point
            for pid, chain in self.piece_chain.items():
                if chain[0] == v:
                    out.append((("s", pid, 0), 1))
                if chain[-1] == v:
                    out.append((("s", pid, len(chain) - 2), -1))
            out.append((("c", (k - 1) % n), -1))
            if len(out) > 3:
                raise RuntimeError("circle point with several strand ends")
            self.rot[v] = out
        for v, sign in self.crossings.items():
            _, pid1, pid2 = v
            c1 = self.piece_chain[pid1]
            c2 = self.piece_chain[pid2]
            i1 = c1.index(v)
            i2 = c2.index(v)
            a_in = (("s", pid1, i1 - 1), -1)
            a_out = (("s", pid1, i1), 1)
            b_in = (("s", pid2, i2 - 1), -1)
            b_out = (("s", pid2, i2), 1)
            if sign > 0:
                self.rot[v] = [a_in, b_in, a_out, b_out]
            else:
                self.rot[v] = [a_in, b_out, a_out, b_in]

    def _check_counts(self):
        """Planar crossing totals must reproduce the cover's minimal
        counts for every strand pair."""
        per_pair = {}
        for v in self.crossings:
            _, pid1, pid2 = v
            key = (pid1[0], pid2[0])
            per_pair[key] = per_pair.get(key, 0) + 1
        ids = sorted(self.strands)
        for i, s1 in enumerate(ids):
            for s2 in ids[i + 1:]:
                want = self._cover_count(s1, s2)
                got = per_pair.get((s1, s2), 0) + per_pair.get((s2, s1), 0)
                if got != want:
                    raise RuntimeError(
                        f"arrangement count mismatch {s1} vs {s2}: "
                        f"{got} != {want}")

    def _cover_count(self, s1, s2):
        a, b = self.strands[s1], self.strands[s2]
        surf = self.surface
        if a[0] == "arc" and b[0] == "arc":
            return len(cover.arc_arc_crossings(surf, a, b))
        if a[0] == "arc":
            return len(cover.arc_loop_crossings(surf, a, b[1]))
        if b[0] == "arc":
            return len(cover.arc_loop_crossings(surf, b, a[1]))
        return cover.loop_loop_count(surf, a[1], b[1])

    # faces ------------------------------------------------------------

    def _faces(self):
        darts = []
        for e, (u, v) in self.edges.items():
            darts.append((e, 1))
            darts.append((e, -1))
        at = {}
        for v, rots in self.rot.items():
            for i, d in enumerate(rots):
                at[d] = (v, i)

        def dart_head(d):
            e, s = d
            u, v = self.edges[e]
            return v if s == 1 else u

        def dart_tail(d):
            e, s = d
            u, v = self.edges[e]
            return u if s == 1 else v

        def next_dart(d):
            # face kept on the left: at the head, turn as sharply left as
            # possible, i.e. take the rotation predecessor of the reversed
            # dart
            v = dart_head(d)
            rev = (d[0], -d[1])
            rots = self.rot[v]
            i = rots.index(rev)
            return rots[(i - 1) % len(rots)]

        for v, rots in self.rot.items():
            for d in rots:
                assert dart_tail(d) == v, (v, d)

        unused = set(darts)
        faces = []
        while unused:
            d0 = min(unused, key=_dart_key)
            walk = []
            d = d0
            while True:
                walk.append(d)
                unused.discard(d)
                d = next_dart(d)
                if d == d0:
                    break
            faces.append(tuple(walk))
        self.all_faces = faces

        # Euler check on the sphere
        V = len(self.rot)
        E = len(self.edges)
        F = len(faces)
        if V - E + F != 2:
            raise RuntimeError(f"bad planar map: V-E+F = {V - E + F}")

        # the outer face is the one walking the circle clockwise
        outer = None
        for f in faces:
            if (("c", 0), -1) in f:
                outer = f
        assert outer is not None
        self.outer = outer
        self.faces = [f for f in faces if f is not outer]
        self.face_of_dart = {}
        for f in self.faces:
            for d in f:
                self.face_of_dart[d] = f

    # gluing -------------------------------------------------------------

    def _glue(self):
        dm = self.dm
        surf = self.surface
        # collect circle edges per side, in circle order
        side_edges = {}
        pt_side = {}
        cur = None
        for k, p in enumerate(dm.points):
            if p[0] == "corner":
                cur = p[1]
            pt_side[k] = cur
        for k in range(dm.n):
            side_edges.setdefault(pt_side[k], []).append(("c", k))

        self.edge_kind = {}
        for e in self.edges:
            self.edge_kind[e] = "strand" if e[0] == "s" else None
        for i, side in enumerate(surf.sides):
            for e in side_edges.get(i, ()):
                self.edge_kind[e] = "bnd" if side[0] == "b" else "cut"

        # designated slivers: boundary edges between a pushed pair
        self.sliver_edge = {}
        for e in self.edges:
            if self.edge_kind[e] != "bnd":
                continue
            u, v = self.edges[e]
            msu = dm.points[u[1]]
            msv = dm.points[v[1]]
            if msu[0] == "m" and msv[0] == "m":
                key = frozenset((msu[1], msv[1]))
                if key in self.sliver_pairs:
                    self.sliver_edge[e] = self.sliver_pairs[key]

        # pair cut edges: side (c,+1) edges glued to reversed (c,-1) edges
        self.glued = {}
        for c in range(surf.cut_count):
            ip = surf.cut_side_index(c, 1)
            im = surf.cut_side_index(c, -1)
            plus = side_edges.get(ip, [])
            minus = side_edges.get(im, [])
            assert len(plus) == len(minus)
            for k, e in enumerate(plus):
                e2 = minus[len(minus) - 1 - k]
                self.glued[e] = e2
                self.glued[e2] = e

        # components of the complement: union-find on faces across cut edges
        parent = {id(f): f for f in self.faces}

        def find(f):
            while parent[id(f)] is not f:
                parent[id(f)] = parent[id(parent[id(f)])]
                f = parent[id(f)]
            return f

        def union(f1, f2):
            r1, r2 = find(f1), find(f2)
            if r1 is not r2:
                parent[id(r1)] = r2

        for e, e2 in self.glued.items():
            # the inner face at a circle edge is the one walking it forward
            f1 = self.face_of_dart[(e, 1)]
            f2 = self.face_of_dart[(e2, 1)]
            union(f1, f2)

        comps = {}
        for f in self.faces:
            comps.setdefault(id(find(f)), []).append(f)
        self.components = list(comps.values())

    # region extraction -----------------------------------------------------

    def regions(self):
        out = []
        for comp in self.components:
            out.append(self._region_of(comp))
        # global Euler sanity: the glued complex must rebuild the surface
        total = self._total_chi()
        chi = self.surface.euler_characteristic()
        if total != chi:
            raise RuntimeError(f"glued complex chi {total} != {chi}")
        return out

    def _region_of(self, comp):
        faces = list(comp)
        slots = []
        slot_index = {}
        for f in faces:
            for i, d in enumerate(f):
                slot_index[d] = len(slots)
                slots.append((f, i, d))

        glued_slots = {}
        for f, i, d in slots:
            e = d[0]
            if e in self.glued:
                partner_e = self.glued[e]
                for dd in ((partner_e, 1), (partner_e, -1)):
                    if dd in slot_index and dd != d:
                        glued_slots[slot_index[d]] = slot_index[dd]

        # corner union-find: corner i = corner before slot i in its face
        corner_parent = list(range(len(slots)))

        def find(i):
            while corner_parent[i] != i:
                corner_parent[i] = corner_parent[corner_parent[i]]
                i = corner_parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                corner_parent[ri] = rj

        def corner_before(si):
            return si

        def corner_after(si):
            f, i, d = slots[si]
            return slot_index[f[(i + 1) % len(f)]]

        for si, sj in glued_slots.items():
            # slot si glued to reversed slot sj: corner before si ~ corner
            # after sj
            union(corner_before(si), corner_after(sj))

        n_pairs = len(glued_slots) // 2
        E = n_pairs + (len(slots) - 2 * n_pairs)
        V = len({find(i) for i in range(len(slots))})
        F = len(faces)
        chi = V - E + F

        # boundary walks: cycles of unglued slots
        unglued = [si for si in range(len(slots)) if si not in glued_slots]

        def next_boundary(si):
            sj = corner_after(si)
            while sj in glued_slots:
                sj = corner_after(glued_slots[sj])
            return sj

        walks = []
        seen = set()
        for si in unglued:
            if si in seen:
                continue
            walk = []
            cur = si
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                cur = next_boundary(cur)
            walks.append(walk)

        return Region(self, faces, chi, walks, slots)

    def _total_chi(self):
        total = 0
        for comp in self.components:
            total += self._region_of(comp).chi
        # add back the strand graph: vertices and edges removed by taking
        # the open complement.  Complement components chi sum equals
        # chi(surface) minus chi of the strand-and-boundary graph plus
        # the full face count... instead, rebuild the closed surface:
        # glue ALL faces along cut edges and also along strand edges and
        # boundary edges shared by two faces; simpler: check via the whole
        # complex below.
        V = len(self.rot)
        # glued cut edges merge pairs of edges and identify endpoint
        # vertices; boundary/strand edges stay
        edge_classes = set()
        for e in self.edges:
            if e in self.glued:
                edge_classes.add(frozenset((e, self.glued[e])))
            else:
                edge_classes.add(frozenset((e,)))
        vparent = {}

        def vfind(x):
            vparent.setdefault(x, x)
            while vparent[x] != x:
                vparent[x] = vparent[vparent[x]]
                x = vparent[x]
            return x

        def vunion(x, y):
            rx, ry = vfind(x), vfind(y)
            if rx != ry:
                vparent[rx] = ry

        for v in self.rot:
            vfind(v)
        for e, e2 in self.glued.items():
            u1, v1 = self.edges[e]
            u2, v2 = self.edges[e2]
            vunion(u1, v2)
            vunion(v1, u2)
        Vc = len({vfind(v) for v in self.rot})
        Ec = len(edge_classes)
        Fc = len(self.faces)
        return Vc - Ec + Fc


def _dart_key(d):
    return (str(d[0]), d[1])


# ---------------------------------------------------------------------------
# regions


@dataclass
class Corner:
    """A corner of a region's boundary walk."""

    kind: str          # "interior" | "boundary" | "outer"
    sign: int          # frame sign; 0 for degenerate or outer pieces
    vertex: object     # crossing vertex or (mark, image mark) pair
    owners: tuple      # strand ids meeting there


class Region:
    """One complementary component of the strand union."""

    def __init__(self, arr, faces, chi, walks, slots):
        self.arrangement = arr
        self.faces = faces
        self.chi = chi
        self._walks = walks
        self._slots = slots
        self.boundary_walks = [self._decode(w) for w in walks]

    @property
    def is_disc(self):
        return self.chi == 1 and len(self._walks) == 1

    def _decode(self, walk):
        """Edge/corner structure of one boundary walk."""
        arr = self.arrangement
        items = []
        for si in walk:
            _f, _i, d = self._slots[si]
            items.append(d)
        return items

    def walk_features(self):
        """Per walk: (edges, corners); edges tagged strand/bnd/sliver."""
        arr = self.arrangement
        out = []
        for walk in self.boundary_walks:
            edges = []
            for d in walk:
                e = d[0]
                kind = arr.edge_kind[e]
                if kind == "bnd" and e in arr.sliver_edge:
                    kind = "sliver"
                edges.append((d, kind))
            corners = []
            n = len(walk)
            for i, d in enumerate(walk):
                e = d[0]
                if arr.edge_kind[e] == "strand":
                    nxt = walk[(i + 1) % n]
                    ne = nxt[0]
                    head = self._dart_head(d)
                    if ne[0] == "s" and ne[1][0] != e[1][0] \
                            and head in arr.crossings:
                        # normalize the frame to (collection, image) order
                        raw = arr.crossings[head]
                        sid1 = head[1][0]
                        sign = raw if sid1[0] == "g" else -raw
                        owners = tuple(sorted((e[1][0], ne[1][0]),
                                              key=lambda s: s[0] != "g"))
                        corners.append(Corner("interior", sign, head,
                                              owners))
                    elif arr.edge_kind[ne] in ("bnd",):
                        if ne in arr.sliver_edge:
                            after = walk[(i + 2) % n]
                            sign, gi = arr.sliver_edge[ne]
                            owners = (e[1][0],)
                            if after[0][0] == "s":
                                owners = (e[1][0], after[0][1][0])
                            corners.append(Corner(
                                "boundary", sign, ne, owners))
                        else:
                            corners.append(Corner("outer", 0, ne, ()))
            out.append((edges, corners))
        return out

    def _dart_head(self, d):
        e, s = d
        u, v = self.arrangement.edges[e]
        return v if s == 1 else u

    @property
    def corner_cycle(self):
        """Corners of the (single) boundary walk of a disc region."""
        feats = self.walk_features()
        if len(feats) != 1:
            raise ValueError("region has several boundary walks")
        return feats[0][1]

    @property
    def interior_corners(self):
        return [c for c in self.corner_cycle if c.kind == "interior"]

    @property
    def boundary_corners(self):
        return [c for c in self.corner_cycle if c.kind == "boundary"]

    def touches_outer_boundary(self):
        for edges, _c in self.walk_features():
            for _d, kind in edges:
                if kind == "bnd":
                    return True
        return False

    def signed_points(self):
        return [SignedPoint(("interior", c.vertex), c.sign, c.owners)
                for c in self.interior_corners]


# ---------------------------------------------------------------------------
# predicates


@dataclass
class RegionVerdict:
    region: object
    condition_flags: tuple
    failure_witness: object = None

    @property
    def found(self):
        return all(self.condition_flags)


def _arrangement(book):
    if "arrangement" not in book._cache:
        book._cache["arrangement"] = _Arrangement(book)
    return book._cache["arrangement"]


def complement_faces(book):
    """All complementary regions of the collection and its images."""
    if not book.gamma:
        return []
    if "regions" not in book._cache:
        book._cache["regions"] = _arrangement(book).regions()
    return book._cache["regions"]


def boundary_based(region) -> bool:
    """Disc region whose corners alternate boundary/interior around the
    walk, every boundary corner a positive designated point, and no plain
    outer-boundary edges."""
    if not region.is_disc or region.touches_outer_boundary():
        return False
    cyc = region.corner_cycle
    if not cyc or len(cyc) % 2:
        return False
    kinds = [c.kind for c in cyc]
    for off in (0, 1):
        if all(k == ("boundary" if (i + off) % 2 == 0 else "interior")
               for i, k in enumerate(kinds)):
            return all(c.sign > 0 for c in cyc if c.kind == "boundary")
    return False


def isolated(region, book) -> bool:
    """Every interior crossing of the arrangement is a corner of the
    region."""
    arr = _arrangement(book)
    mine = {c.vertex for c in region.interior_corners}
    return set(arr.crossings) <= mine


def _isolation_witness(region, book):
    arr = _arrangement(book)
    mine = {c.vertex for c in region.interior_corners}
    for v in sorted(arr.crossings, key=str):
        if v not in mine:
            return v
    return None


def _candidates(book):
    out = []
    for r in complement_faces(book):
        if not boundary_based(r):
            continue
        if any(c.sign >= 0 for c in r.interior_corners):
            continue
        if not r.interior_corners:
            continue
        out.append(r)
    return out


def find_overtwisted_region(book) -> RegionVerdict:
    """Decide the overtwisted-region conditions.

    Requires every designated boundary point of the collection to be
    positive (a negative one raises PreconditionError, it does not yield a
    False verdict).  Returns the unique isolated boundary-based region with
    negative interior corners when it exists; otherwise the flags record
    which condition failed, with a witness."""
    for mark, sign in book.boundary_signs().items():
        if sign < 0:
            raise PreconditionError(
                f"boundary point at mark {mark} is negative")
    if not book.gamma:
        return RegionVerdict(None, (False, False, False))
    cands = _candidates(book)
    if not cands:
        return RegionVerdict(None, (False, False, False))
    isolated_cands = [r for r in cands if isolated(r, book)]
    if not isolated_cands:
        return RegionVerdict(None, (True, False, False),
                             _isolation_witness(cands[0], book))
    if len(isolated_cands) > 1:
        return RegionVerdict(None, (True, True, False), isolated_cands[1])
    return RegionVerdict(isolated_cands[0], (True, True, True))


def overtwisted_region_quiet(book):
    """Like find_overtwisted_region but returning None instead of raising
    when a boundary point is negative (used by the search, where negative
    configurations simply fail the definition's precondition)."""
    try:
        v = find_overtwisted_region(book)
    except PreconditionError:
        return None
    return v.region if v.found else None


# ---------------------------------------------------------------------------
# properness


def is_proper(region, book) -> bool:
    """Whether the book's curve system can be isotoped (fixing its
    boundary) into an arbitrarily small neighborhood of one negative
    corner of the region.

    Decided combinatorially: some negative corner y must see every
    crossing of the system with the strands sitting on one of y's two
    strands, with no other arrangement vertex strictly between the
    crossing and y along that strand."""
    if not region.interior_corners or \
            not any(c.sign < 0 for c in region.interior_corners):
        raise ValueError("region has no negative corner")
    ls = book.l_system
    if ls.is_empty():
        return True

    extra = {}
    for j, a in enumerate(ls.arcs):
        extra[("l", j)] = ("arc", tuple(a.word), a.start, a.end)
    for j, c in enumerate(ls.closed):
        extra[("l", len(ls.arcs) + j)] = ("loop", tuple(c.word))
    arr = _Arrangement(book, extra)

    def kind_of(v):
        _, pid1, pid2 = v
        if pid1[0][0] == "l" and pid2[0][0] == "l":
            return "ll"
        if pid1[0][0] == "l" or pid2[0][0] == "l":
            return "l"
        return "block"

    l_vertices = {v for v in arr.crossings if kind_of(v) == "l"}
    if not l_vertices:
        return True

    # ordered events along each collection/image strand; crossings of the
    # strand with the cut system are not walls and do not appear
    strand_events = {}
    for sid in arr.strands:
        if sid[0] == "l":
            continue
        chain = []
        idx = 0
        while (sid, idx) in arr.piece_chain:
            chain.extend(arr.piece_chain[(sid, idx)][1:-1])
            idx += 1
        strand_events[sid] = chain

    for corner in (c for c in region.interior_corners if c.sign < 0):
        y = corner.vertex
        reached = set()
        _, pid1, pid2 = y
        for sid in (pid1[0], pid2[0]):
            evs = strand_events[sid]
            if y not in evs:
                continue
            iy = evs.index(y)
            for step in (1, -1):
                j = iy + step
                while 0 <= j < len(evs):
                    v = evs[j]
                    k = kind_of(v)
                    if k == "l":
                        reached.add(v)
                    elif k == "block":
                        break
                    j += step
        if l_vertices <= reached:
            return True
    return False
