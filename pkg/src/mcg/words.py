"""Reduced words and automorphisms of finitely generated free groups.

A word over the free group F_n is a tuple of nonzero ints: letter ``i``
(1-based) is the i-th generator, ``-i`` its inverse.  Every function here
returns freely reduced words, and assumes its inputs are reduced unless
stated otherwise.

Automorphisms are carried as an :class:`AutPair`, the images of the
generators under the map together with the images under its inverse.
Keeping the inverse explicit makes inversion free, composition cheap, and
turns invertibility into a construction-time certificate instead of a
search.  ``compose``/``inverse`` preserve the mutual-inverse invariant by
construction; use :func:`make_aut` when building a pair from raw tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Word = tuple[int, ...]


def reduce_word(letters: Iterable[int]) -> Word:
    """Freely reduce a sequence of letters."""
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[k] != -w[k + 1] for k in range(len(w) - 1)) and 0 not in w


def invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def concat(*parts: Sequence[int]) -> Word:
    """Reduced product of several words."""
    chained: list[int] = []
    for p in parts:
        chained.extend(p)
    return reduce_word(chained)


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        w, k = invert(w), -k
    return concat(*([tuple(w)] * k)) if k else ()


def conjugate(w: Sequence[int], by: Sequence[int]) -> Word:
    """Return by . w . by^-1, reduced."""
    return concat(by, w, invert(by))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w as conj . core . conj^-1 with core cyclically reduced.

    Returns (core, conj).
    """
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j], w[:i]


def rotations(w: Word) -> list[Word]:
    return [w[r:] + w[:r] for r in range(len(w))] or [()]


def conjugacy_witness(u: Word, v: Word) -> Optional[Word]:
    """A word w with u = w v w^-1, or None if u, v are not conjugate.

    Cores of conjugate elements are rotations of each other, so the match
    is found by scanning rotations of the core of v; the returned witness
    is verified by substitution before being handed back.
    """
    core_u, cu = cyclic_reduce(u)
    core_v, cv = cyclic_reduce(v)
    n = len(core_u)
    if n != len(core_v):
        return None
    if n == 0:
        return ()
    doubled = core_v + core_v
    for r in range(n):
        if doubled[r : r + n] == core_u:
            # core_u = prefix^-1 . core_v . prefix for prefix = core_v[:r]
            w = concat(cu, invert(core_v[:r]), invert(cv))
            if concat(w, v, invert(w)) == u:
                return w
    return None


# ---------------------------------------------------------------------------
# automorphisms


def _substitute(table: Sequence[Word], w: Sequence[int]) -> Word:
    """Image of w under the endomorphism sending generator i to table[i-1]."""
    out: list[int] = []
    for x in w:
        img = table[x - 1] if x > 0 else tuple(-y for y in reversed(table[-x - 1]))
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


@dataclass(frozen=True)
class AutPair:
    """Automorphism of F_rank: generator images of the map and its inverse."""

    rank: int
    fwd: tuple[Word, ...]
    bwd: tuple[Word, ...]

    def __call__(self, w: Sequence[int]) -> Word:
        return _substitute(self.fwd, w)


def identity_aut(rank: int) -> AutPair:
    table = tuple((i,) for i in range(1, rank + 1))
    return AutPair(rank, table, table)


def make_aut(fwd: Sequence[Sequence[int]], bwd: Sequence[Sequence[int]]) -> AutPair:
    """Build an AutPair from raw tables, checking the mutual-inverse law."""
    rank = len(fwd)
    if len(bwd) != rank:
        raise ValueError("tables of unequal rank")
    f = tuple(reduce_word(w) for w in fwd)
    b = tuple(reduce_word(w) for w in bwd)
    for table in (f, b):
        for w in table:
            for x in w:
                if not 1 <= abs(x) <= rank:
                    raise ValueError(f"letter {x} out of range for rank {rank}")
    for i in range(rank):
        if _substitute(f, b[i]) != (i + 1,) or _substitute(b, f[i]) != (i + 1,):
            raise ValueError("tables are not mutually inverse")
    return AutPair(rank, f, b)


def apply_aut(f: AutPair, w: Sequence[int]) -> Word:
    return _substitute(f.fwd, w)


def compose(f: AutPair, g: AutPair) -> AutPair:
    """f after g (g is applied first)."""
    if f.rank != g.rank:
        raise ValueError("rank mismatch")
    return AutPair(
        f.rank,
        tuple(_substitute(f.fwd, u) for u in g.fwd),
        tuple(_substitute(g.bwd, u) for u in f.bwd),
    )


def inverse(f: AutPair) -> AutPair:
    return AutPair(f.rank, f.bwd, f.fwd)


def ad_aut(rank: int, w: Sequence[int]) -> AutPair:
    """Inner automorphism x -> w x w^-1."""
    wi = invert(w)
    return AutPair(
        rank,
        tuple(concat(w, (i,), wi) for i in range(1, rank + 1)),
        tuple(concat(wi, (i,), w) for i in range(1, rank + 1)),
    )


def is_identity_aut(f: AutPair) -> bool:
    return all(f.fwd[i] == (i + 1,) for i in range(f.rank))


def abelianized(f: AutPair) -> tuple[tuple[int, ...], ...]:
    """Matrix of f on Z^rank; entry (i, j) counts generator i in f(x_j).

    Columns are images, so abelianized(compose(f, g)) is the matrix product
    abelianized(f) @ abelianized(g).
    """
    n = f.rank
    cols = []
    for j in range(n):
        col = [0] * n
        for x in f.fwd[j]:
            col[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def inner_witness(f: AutPair) -> Optional[Word]:
    """A word w with f = ad(w), or None when f is not inner.

    Solves f(x_1) = w x_1 w^-1 by cyclic reduction: the core must be the
    single letter x_1, which pins w up to a right factor x_1^k.  The power
    k is read off from the equation for x_2, and the resulting candidate is
    verified on every generator.  Requires rank >= 2 (the centralizer
    argument needs a second generator).
    """
    if f.rank < 2:
        raise ValueError("inner_witness needs rank >= 2")
    ident = tuple(
        tuple(1 if i == j else 0 for j in range(f.rank)) for i in range(f.rank)
    )
    if abelianized(f) != ident:
        return None
    core, conj = cyclic_reduce(f.fwd[0])
    if core != (1,):
        return None
    # candidates are conj . x_1^k; match f(x_2) = conj x_1^k x_2 x_1^-k conj^-1
    v = concat(invert(conj), f.fwd[1], conj)
    if v == (2,):
        k = 0
    else:
        s = 1 if v[0] > 0 else -1
        if abs(v[0]) != 1:
            return None
        t = 0
        while t < len(v) and v[t] == s:
            t += 1
        k = s * t
        if v != (s,) * t + (2,) + (-s,) * t:
            return None
    w = concat(conj, power((1,), k))
    wi = invert(w)
    for i in range(f.rank):
        if f.fwd[i] != concat(w, (i + 1,), wi):
            return None
    return w
