"""Independent minimal-position oracle.

Realizes the polygon model hyperbolically: each polygon side occupies an
interval of the real boundary of the upper half-plane, and each cut-arc
gluing becomes a rational Mobius side pairing (a Schottky generator
mapping the half-disc over one copy onto the complement of the half-disc
over the other, reversing the induced boundary orientation).  Marks sit at
rational points, so every lifted arc endpoint is an exact rational, and
two geodesic lifts cross exactly when their endpoint pairs interleave on
the real line.

Geometric intersection numbers and embeddedness are read off by
enumerating deck translates whose tile paths can meet, entirely in exact
arithmetic, with no shared code with the package's combinatorial kernel.
"""

from fractions import Fraction


def _reduce(letters):
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _inverse(word):
    return tuple(-a for a in reversed(word))


def _prefixes(word):
    return [tuple(word[:i]) for i in range(len(word) + 1)]


class Matrix:
    __slots__ = ("p", "q", "r", "s")

    def __init__(self, p, q, r, s):
        self.p, self.q, self.r, self.s = (Fraction(p), Fraction(q),
                                          Fraction(r), Fraction(s))

    def __mul__(self, other):
        return Matrix(self.p * other.p + self.q * other.r,
                      self.p * other.q + self.q * other.s,
                      self.r * other.p + self.s * other.r,
                      self.r * other.q + self.s * other.s)

    def inv(self):
        return Matrix(self.s, -self.q, -self.r, self.p)

    def det(self):
        return self.p * self.s - self.q * self.r

    def apply(self, z):
        den = self.r * z + self.s
        if den == 0:
            raise ZeroDivisionError("Mobius pole hit a marked point")
        return (self.p * z + self.q) / den


def _identity():
    return Matrix(1, 0, 0, 1)


class HyperbolicModel:
    """Schottky realization of a surface's polygon."""

    def __init__(self, surface):
        self.surface = surface
        self.gen = {}
        for c in range(surface.cut_count):
            ip = surface.cut_side_index(c, 1)
            im = surface.cut_side_index(c, -1)
            a1, b1 = Fraction(ip), Fraction(ip + 1)
            a2, b2 = Fraction(im), Fraction(im + 1)
            m1 = a1 + Fraction(1, 2)
            # M(b2) = a1, M(a2) = b1, M(inf) = m1, with r = 1
            p = m1
            s = (a2 * (b1 - m1) + b2 * (m1 - a1)) / (a1 - b1)
            q = a1 * b2 + a1 * s - m1 * b2
            M = Matrix(p, q, 1, s)
            assert M.det() > 0, "side pairing is orientation-reversing"
            assert M.apply(b2) == a1 and M.apply(a2) == b1
            # ping-pong: a point far outside the minus interval lands inside
            # the plus interval
            probe = M.apply(Fraction(len(surface.sides) + 7))
            assert a1 < probe < b1
            self.gen[c + 1] = M
            self.gen[-(c + 1)] = M.inv()
        self._rho_cache = {(): _identity()}

    def rho(self, word):
        word = tuple(word)
        got = self._rho_cache.get(word)
        if got is None:
            got = self.rho(word[:-1]) * self.gen[word[-1]]
            self._rho_cache[word] = got
        return got

    def mark_pos(self, mark):
        seg, k = self.surface.mark_location(mark)
        i = self.surface.side_index("b", seg)
        n = len(self.surface.seg_marks[seg])
        return Fraction(i) + Fraction(k + 1, n + 1)

    def arc_chord(self, spec, g=()):
        """Endpoints of the g-translate of the arc's base lift."""
        _, w, sm, em = spec
        a = self.rho(g).apply(self.mark_pos(sm))
        b = self.rho(_reduce(tuple(g) + tuple(w))).apply(self.mark_pos(em))
        return a, b


def _interleave(c1, c2):
    x1, y1 = c1
    x2, y2 = c2
    if len({x1, y1, x2, y2}) < 4:
        return False
    lo, hi = min(x1, y1), max(x1, y1)
    return (lo < x2 < hi) != (lo < y2 < hi)


def _ccw_between(a, x, b):
    """x strictly inside the counterclockwise (increasing, wrapping through
    infinity) interval from a to b; all finite rationals."""
    if x == a or x == b:
        return False
    if a < b:
        return a < x < b
    return x > a or x < b


def _cross_sign(p1, q1, p2, q2):
    return 1 if _ccw_between(p1, p2, q1) else -1


def _candidates(wa, wb, expand=0):
    out = []
    seen = set()
    frontier = []
    for p in _prefixes(wa):
        for q in _prefixes(wb):
            g = _reduce(tuple(p) + _inverse(q))
            if g not in seen:
                seen.add(g)
                out.append(g)
                frontier.append(g)
    letters = sorted({abs(l) for l in tuple(wa) + tuple(wb)})
    for _ in range(expand):
        nxt = []
        for g in frontier:
            for l in letters:
                for s in (l, -l):
                    h = _reduce(tuple(g) + (s,))
                    if h not in seen:
                        seen.add(h)
                        out.append(h)
                        nxt.append(h)
        frontier = nxt
    return out


def oracle_intersection(surface, spec_a, spec_b, expand=0, signed=False):
    """Minimal interior intersection count of two arcs (with signs if
    requested): the number of deck translates of the second arc's geodesic
    lift that link the first's."""
    model = _model(surface)
    A = model.arc_chord(spec_a)
    hits = []
    for g in _candidates(spec_a[1], spec_b[1], expand):
        B = model.arc_chord(spec_b, g)
        if _interleave(A, B):
            hits.append(_cross_sign(A[0], A[1], B[0], B[1]))
    if signed:
        return hits
    return len(hits)


def oracle_is_embedded(surface, spec, expand=0):
    model = _model(surface)
    A = model.arc_chord(spec)
    for g in _candidates(spec[1], spec[1], expand):
        if g == ():
            continue
        if _interleave(A, model.arc_chord(spec, g)):
            return False
    return True


_models = {}


def _model(surface):
    key = id(surface)
    if key not in _models:
        _models[key] = HyperbolicModel(surface)
    return _models[key]
