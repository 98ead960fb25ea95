"""Compact oriented surfaces with boundary, as polygons with identifications.

A surface of genus g with b >= 1 boundary components is stored as its
complementary disc under a fixed cut system: a polygon whose sides, read
counterclockwise, are either boundary segments (pieces of the surface
boundary) or one of the two copies ``c_i^+`` / ``c_i^-`` of a cut arc.
Gluing ``c_i^+`` to ``c_i^-`` (reversing the induced orientation) recovers
the surface, so the complement of the cut system is a single disc by
construction.

Boundary segments carry an ordered list of *marks*: the discrete slots where
arc endpoints live.  Isotopies fix marks, which turns isotopy of arcs into
equality of reduced crossing words (see :mod:`openbook_lab.words`).

1-handle attachment inserts a fresh cut arc (the co-core of the handle) and
four fresh boundary segments around the two feet; every existing mark and
every existing crossing word survives unchanged, so the inclusion of arc
encodings is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class HandleAttachment:
    """Record of a 1-handle attachment.

    ``cut_index`` is the index of the fresh cut arc (the handle's co-core);
    a curve running once through the handle picks up the letter
    ``cut_index + 1`` (sign depending on direction).  ``foot_a``/``foot_b``
    are the gaps on the base surface that received the feet.  The four
    fresh boundary segments flank the co-core copies: ``(n1, c^+, n2)`` at
    foot a and ``(n3, c^-, n4)`` at foot b.  ``splits`` remembers how the
    base boundary segments were divided, enough to undo the attachment.
    """

    cut_index: int
    foot_a: tuple
    foot_b: tuple
    segs_a: tuple  # (left part, n1, n2, right part) seg ids at foot a
    segs_b: tuple  # (left part, n3, n4, right part) seg ids at foot b
    splits: tuple  # ((old seg, (new seg ids...)), ...) for undo

    @property
    def letter(self) -> int:
        """Positive crossing letter of the co-core."""
        return self.cut_index + 1


class CombSurface:
    """Oriented surface with boundary in polygon-with-identifications form.

    Immutable; all mutators return fresh surfaces.  Mark and segment ids are
    stable across handle attachment and mark insertion, so arc encodings on
    a base surface remain valid on any surface derived from it.
    """

    __slots__ = ("sides", "seg_marks", "handles", "_next_seg", "_next_mark",
                 "_cache", "_components")

    def __init__(self, sides, seg_marks, handles=(), next_seg=None, next_mark=0):
        self.sides = tuple(sides)
        self.seg_marks = dict(seg_marks)
        self.handles = tuple(handles)
        self._next_seg = (max(self.seg_marks, default=-1) + 1
                          if next_seg is None else next_seg)
        self._next_mark = next_mark
        self._cache = {}
        self._components = None
        self._validate()

    # -- construction -----------------------------------------------------

    @staticmethod
    def disc():
        return CombSurface(sides=(("b", 0),), seg_marks={0: ()})

    def _validate(self):
        seen = {}
        for i, s in enumerate(self.sides):
            if s[0] == "c":
                _, c, sign = s
                seen.setdefault(c, []).append(sign)
                for j in (i - 1, i + 1):
                    if self.sides[j % len(self.sides)][0] != "b":
                        raise ValueError("cut sides must be flanked by boundary")
            elif s[0] == "b":
                if s[1] not in self.seg_marks:
                    raise ValueError(f"segment {s[1]} has no mark table")
            else:
                raise ValueError(f"bad side {s}")
        for c, signs in seen.items():
            if sorted(signs) != [-1, 1]:
                raise ValueError(f"cut {c} not glued +/-: {signs}")

    # -- basic queries -----------------------------------------------------

    @property
    def cut_count(self) -> int:
        return sum(1 for s in self.sides if s[0] == "c") // 2

    def euler_characteristic(self) -> int:
        # each cut arc raises chi of the complement by one; the complement
        # is a disc
        return 1 - self.cut_count

    def side_index(self, kind, *ref):
        for i, s in enumerate(self.sides):
            if s[0] == kind and s[1:] == ref:
                return i
        raise KeyError((kind, ref))

    def cut_side_index(self, cut, sign):
        return self.side_index("c", cut, sign)

    def boundary_components(self):
        """Boundary components as tuples of polygon side indices (boundary
        sides only), each in the order the surface boundary traverses them.
        """
        if self._components is not None:
            return self._components
        n = len(self.sides)
        nxt = {}
        for i, s in enumerate(self.sides):
            if s[0] != "b":
                continue
            j = (i + 1) % n
            if self.sides[j][0] == "c":
                _, c, sign = self.sides[j]
                j = (self.cut_side_index(c, -sign) + 1) % n
            if self.sides[j][0] != "b":
                raise ValueError("adjacent cut sides")
            nxt[i] = j
        comps = []
        seen = set()
        for i in sorted(nxt):
            if i in seen:
                continue
            comp = []
            j = i
            while j not in seen:
                seen.add(j)
                comp.append(j)
                j = nxt[j]
            comps.append(tuple(comp))
        self._components = tuple(comps)
        return self._components

    def boundary_words(self):
        """Crossing word of a push-off of each boundary component."""
        out = []
        n = len(self.sides)
        for comp in self.boundary_components():
            word = []
            for i in comp:
                j = (i + 1) % n
                if self.sides[j][0] == "c":
                    _, c, sign = self.sides[j]
                    word.append(sign * (c + 1))
            out.append(tuple(word))
        return tuple(out)

    @property
    def n_boundary(self) -> int:
        return len(self.boundary_components())

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic()
        g2 = 2 - self.n_boundary - chi
        if g2 < 0 or g2 % 2:
            raise ValueError("inconsistent polygon")
        return g2 // 2

    def component_of_seg(self, seg):
        for ci, comp in enumerate(self.boundary_components()):
            for i in comp:
                if self.sides[i][1] == seg:
                    return ci
        raise KeyError(seg)

    def all_marks(self):
        out = set()
        for marks in self.seg_marks.values():
            out.update(marks)
        return out

    def mark_location(self, mark):
        """(seg id, index within segment) of a mark."""
        for seg, marks in self.seg_marks.items():
            if mark in marks:
                return seg, marks.index(mark)
        raise KeyError(f"no mark {mark}")

    def marks_in_boundary_order(self):
        """All marks in the order the surface boundary visits them,
        grouped by boundary component."""
        comps = []
        for comp in self.boundary_components():
            row = []
            for i in comp:
                row.extend(self.seg_marks[self.sides[i][1]])
            comps.append(tuple(row))
        return tuple(comps)

    # -- mutation (returns fresh surfaces) ---------------------------------

    def insert_mark(self, seg, index):
        """New surface with one fresh mark in the gap (seg, index)."""
        marks = self.seg_marks[seg]
        if not 0 <= index <= len(marks):
            raise IndexError((seg, index))
        mark = self._next_mark
        table = dict(self.seg_marks)
        table[seg] = marks[:index] + (mark,) + marks[index:]
        surf = CombSurface(self.sides, table, self.handles,
                           self._next_seg, self._next_mark + 1)
        return surf, mark

    def insert_marks(self, gaps):
        """Insert several marks sequentially; each gap is interpreted
        against the surface as built so far."""
        surf, out = self, []
        for seg, index in gaps:
            surf, m = surf.insert_mark(seg, index)
            out.append(m)
        return surf, tuple(out)

    def gap_before(self, mark):
        """Gap immediately before a mark in boundary (ccw) order."""
        seg, i = self.mark_location(mark)
        return seg, i

    def gap_after(self, mark):
        """Gap immediately after a mark in boundary (ccw) order."""
        seg, i = self.mark_location(mark)
        return seg, i + 1

    def remove_mark(self, mark):
        """New surface with the mark deleted (its arcs must be gone)."""
        seg, i = self.mark_location(mark)
        table = dict(self.seg_marks)
        table[seg] = table[seg][:i] + table[seg][i + 1:]
        return CombSurface(self.sides, table, self.handles,
                           self._next_seg, self._next_mark)

    def attach_handle(self, foot_a, foot_b):
        """Attach a 1-handle with feet at the gaps ``foot_a``, ``foot_b``.

        Returns (stabilized surface, HandleAttachment).  Feet may not sit
        on occupied mark positions (they are gaps between marks, so this is
        automatic); attaching away from arc endpoints is the caller's
        responsibility at the level of which gap is chosen.
        """
        seg_a, ia = foot_a
        seg_b, ib = foot_b
        for seg, i in (foot_a, foot_b):
            if seg not in self.seg_marks:
                raise KeyError(f"no segment {seg}")
            if not 0 <= i <= len(self.seg_marks[seg]):
                raise IndexError((seg, i))

        k = self.cut_count
        nid = self._next_seg
        table = dict(self.seg_marks)
        splits = []

        def split(seg, cuts):
            """Split seg at the sorted gap positions; returns new seg ids."""
            marks = table.pop(seg)
            ids = []
            prev = 0
            for pos in cuts + [len(marks)]:
                nonlocal_id = split.nid
                split.nid += 1
                table[nonlocal_id] = marks[prev:pos]
                ids.append(nonlocal_id)
                prev = pos
            splits.append((seg, tuple(ids), tuple(marks)))
            return ids

        split.nid = nid

        def fresh():
            i = split.nid
            split.nid += 1
            table[i] = ()
            return i

        if seg_a == seg_b:
            lo, hi = sorted((ia, ib))
            left, mid, right = split(seg_a, [lo, hi])
            a_first = ia <= ib
            if a_first:
                parts_a = (left, mid)
                parts_b = (mid, right)
            else:
                parts_b = (left, mid)
                parts_a = (mid, right)
        else:
            la, ra = split(seg_a, [ia])
            lb, rb = split(seg_b, [ib])
            parts_a = (la, ra)
            parts_b = (lb, rb)

        n1, n2 = fresh(), fresh()
        n3, n4 = fresh(), fresh()

        ins_a = (("b", n1), ("c", k, 1), ("b", n2))
        ins_b = (("b", n3), ("c", k, -1), ("b", n4))

        def expand(side):
            if side[0] != "b":
                return (side,)
            seg = side[1]
            for old, ids, _ in splits:
                if seg == old:
                    pieces = []
                    new_sides = [("b", i) for i in ids]
                    if seg_a == seg_b and seg == seg_a:
                        # left, [ins_first], mid, [ins_second], right
                        first, second = (ins_a, ins_b) if ia <= ib else (ins_b, ins_a)
                        return (new_sides[0], *first, new_sides[1],
                                *second, new_sides[2])
                    ins = ins_a if seg == seg_a else ins_b
                    return (new_sides[0], *ins, new_sides[1])
            return (side,)

        sides = []
        for side in self.sides:
            sides.extend(expand(side))

        rec = HandleAttachment(
            cut_index=k, foot_a=foot_a, foot_b=foot_b,
            segs_a=(parts_a[0], n1, n2, parts_a[1]),
            segs_b=(parts_b[0], n3, n4, parts_b[1]),
            splits=tuple(splits),
        )
        surf = CombSurface(sides, table, self.handles + (rec,),
                           split.nid, self._next_mark)
        return surf, rec

    def detach_handle(self, cut_index):
        """Undo a recorded handle attachment (the co-core cut disappears).

        Requires the four handle boundary segments to carry no marks and no
        remaining encoding to mention the cut.  Words never crossing the cut
        and all marks outside the handle survive unchanged.  Cut indices
        above the removed one shift down by one; returns (surface, relabel)
        where relabel maps old letters to new letters.
        """
        rec = None
        for h in self.handles:
            if h.cut_index == cut_index:
                rec = h
        if rec is None:
            raise ValueError(f"no recorded handle with cut {cut_index}")
        for n in (rec.segs_a[1], rec.segs_a[2], rec.segs_b[1], rec.segs_b[2]):
            if self.seg_marks.get(n):
                raise ValueError("handle boundary segment carries marks")
            if n not in self.seg_marks:
                raise ValueError("handle boundary segment already gone")

        drop_segs = {rec.segs_a[1], rec.segs_a[2], rec.segs_b[1], rec.segs_b[2]}
        table = dict(self.seg_marks)
        sides = list(self.sides)

        # remove the four fresh segments and the two cut sides
        sides = [s for s in sides
                 if not (s[0] == "c" and s[1] == cut_index)
                 and not (s[0] == "b" and s[1] in drop_segs)]
        for n in drop_segs:
            table.pop(n)

        # re-merge the split base segments where both halves still exist
        for old, ids, _ in rec.splits:
            present = [i for i in ids if i in table]
            if len(present) != len(ids):
                raise ValueError("base segment was re-split; cannot undo")
            merged = tuple(m for i in ids for m in table[i])
            pos = min(sides.index(("b", i)) for i in ids)
            sides = [s for s in sides if not (s[0] == "b" and s[1] in ids)]
            sides.insert(pos, ("b", old))
            for i in ids:
                table.pop(i)
            table[old] = merged

        def relabel(letter):
            c = abs(letter) - 1
            if c == cut_index:
                raise ValueError("letter crosses the removed handle")
            return letter if c < cut_index else (abs(letter) - 1) * (1 if letter > 0 else -1)

        def fix_side(s):
            if s[0] == "c" and s[1] > cut_index:
                return ("c", s[1] - 1, s[2])
            return s

        sides = [fix_side(s) for s in sides]
        handles = tuple(
            HandleAttachment(h.cut_index - (1 if h.cut_index > cut_index else 0),
                             h.foot_a, h.foot_b, h.segs_a, h.segs_b, h.splits)
            for h in self.handles if h.cut_index != cut_index)
        surf = CombSurface(sides, table, handles, self._next_seg, self._next_mark)
        return surf, relabel

    # -- canonical keys -----------------------------------------------------

    def shape_key(self):
        """Canonical key of the polygon up to rotation and renaming.

        Marks are replaced by per-segment counts and cut indices by order of
        first appearance; used to pool memoized computations across
        isomorphically-presented surfaces.
        """
        def rotation(r):
            out = []
            names = {}
            for s in self.sides[r:] + self.sides[:r]:
                if s[0] == "b":
                    out.append(("b", len(self.seg_marks[s[1]])))
                else:
                    _, c, sign = s
                    names.setdefault(c, len(names))
                    out.append(("c", names[c], sign))
            return tuple(out)

        return min(rotation(r) for r in range(len(self.sides)))

    def mark_index_map(self):
        """mark id -> canonical index in boundary-walk order."""
        out = {}
        for comp in self.marks_in_boundary_order():
            for m in comp:
                out[m] = len(out)
        return out

    def __repr__(self):
        return (f"CombSurface(g={self.genus}, b={self.n_boundary}, "
                f"cuts={self.cut_count}, marks={len(self.all_marks())})")


def build_surface(genus: int, boundary: int) -> CombSurface:
    """Canonical surface of the given genus and boundary count.

    The cut system has 2*genus + boundary - 1 arcs: one per extra boundary
    component, two (interleaved) per handle.
    """
    if boundary < 1:
        raise ValueError("surfaces here have nonempty boundary")
    if genus < 0:
        raise ValueError("negative genus")
    surf = CombSurface.disc()

    def first_seg(s):
        comp = s.boundary_components()[0]
        return s.sides[comp[0]][1]

    for _ in range(boundary - 1):
        seg = first_seg(surf)
        surf, _rec = surf.attach_handle((seg, 0), (seg, 0))
    for _ in range(genus):
        seg = first_seg(surf)
        surf, rec1 = surf.attach_handle((seg, 0), (seg, 0))
        # interleave: one foot between the first handle's feet, one outside
        surf, _rec2 = surf.attach_handle((rec1.segs_a[2], 0), (rec1.segs_b[2], 0))
    assert surf.genus == genus and surf.n_boundary == boundary
    assert surf.cut_count == 2 * genus + boundary - 1
    return surf


def attach_handle(surface: CombSurface, foot_a, foot_b):
    """Module-level alias of :meth:`CombSurface.attach_handle`."""
    return surface.attach_handle(foot_a, foot_b)


def euler_characteristic(surface: CombSurface) -> int:
    return surface.euler_characteristic()
