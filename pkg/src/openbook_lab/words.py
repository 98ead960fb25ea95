"""Reduced words over the cut system.

A surface carries a fixed cut system c_0, ..., c_{k-1} whose complement is a
single disc.  An arc or closed curve is encoded by the sequence of its signed
crossings with the cut arcs: the letter ``+(i+1)`` crosses c_i in the positive
direction, ``-(i+1)`` in the negative one.  Words are tuples of nonzero ints;
free (resp. cyclic) reduction gives the canonical representative of a
homotopy class rel endpoints (resp. free homotopy class).
"""

from __future__ import annotations

Word = tuple  # tuple of nonzero signed ints


def reduce_word(letters) -> Word:
    """Free reduction: cancel adjacent inverse pairs."""
    out = []
    for a in letters:
        if a == 0:
            raise ValueError("zero letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def is_reduced(word) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def inverse(word) -> Word:
    return tuple(-a for a in reversed(word))


def concat(*words) -> Word:
    letters = []
    for w in words:
        letters.extend(w)
    return reduce_word(letters)


def cyclic_reduce(word) -> Word:
    """Cyclic reduction: reduce, then cancel matching first/last letters."""
    w = list(reduce_word(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def is_cyclically_reduced(word) -> bool:
    w = tuple(word)
    if not is_reduced(w):
        return False
    return not (len(w) >= 2 and w[0] == -w[-1])


def cyclic_rotations(word):
    w = tuple(word)
    return {w[i:] + w[:i] for i in range(max(1, len(w)))}


def cyclic_equal(a, b) -> bool:
    """Equality of cyclic words up to rotation (orientation preserved)."""
    a, b = cyclic_reduce(a), cyclic_reduce(b)
    return b in cyclic_rotations(a)


def cyclic_key(word) -> Word:
    """Canonical rotation of a cyclic word (lexicographic minimum)."""
    w = cyclic_reduce(word)
    if not w:
        return w
    return min(cyclic_rotations(w))


def primitive_root(word):
    """Smallest u with word = u^n as a cyclic word; returns (u, n)."""
    w = tuple(word)
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w == w[:d] * (n // d):
            return w[:d], n // d
    return w, 1


def prefixes(word):
    """All prefixes of a word as group elements (reduced), incl. the empty one."""
    w = tuple(word)
    return [w[:i] for i in range(len(w) + 1)]


def mul(a, b) -> Word:
    """Product of two reduced words, reduced."""
    a, b = list(a), list(b)
    while a and b and a[-1] == -b[0]:
        a.pop()
        b.pop(0)
    return tuple(a) + tuple(b)
