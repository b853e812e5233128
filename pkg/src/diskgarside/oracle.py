"""Reference models that do not rely on word reversing.

* :func:`oracle_equal` explores equivalence classes of positive words by
  applying elementary relations in both directions at every position.
* :func:`weak_order` and :func:`classical_tamari` build the classical
  lattices directly from permutations and binary trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .disk import DiskError, DiskObject
from .lattice import FinitePoset
from .presentation import Move, Word, relations


@dataclass(frozen=True)
class Caps:
    max_length: int = 12
    max_class: int = 50_000


@dataclass
class Closure:
    """An explored part of an equivalence class.  ``complete`` means no
    rewrite was skipped because of a cap, so ``words`` is the whole class."""

    words: set
    complete: bool


@lru_cache(maxsize=100_000)
def _rules(x: DiskObject) -> tuple[tuple[Word, Word], ...]:
    out = []
    for rel in relations(x):
        out.append((rel.left, rel.right))
        out.append((rel.right, rel.left))
    return tuple(out)


def _neighbours(word: Word):
    for i, mv in enumerate(word):
        for lhs, rhs in _rules(mv.source):
            if word[i:i + len(lhs)] == lhs:
                yield word[:i] + rhs + word[i + len(lhs):]


def closure(word: Sequence[Move], caps: Caps = Caps(), stop_at: Word | None = None) -> Closure:
    start = tuple(word)
    seen = {start}
    frontier = [start]
    complete = True
    while frontier:
        nxt = []
        for w in frontier:
            for u in _neighbours(w):
                if u in seen:
                    continue
                if len(u) > caps.max_length:
                    complete = False
                    continue
                if len(seen) >= caps.max_class:
                    return Closure(seen, False)
                seen.add(u)
                if stop_at is not None and u == stop_at:
                    return Closure(seen, False)
                nxt.append(u)
        frontier = nxt
    return Closure(seen, complete)


def oracle_equal(u: Sequence[Move], v: Sequence[Move], caps: Caps = Caps()) -> str:
    """``"yes"``, ``"no"`` or ``"inconclusive"`` for positive equivalence."""
    u, v = tuple(u), tuple(v)
    if u and v and u[0].source != v[0].source:
        raise DiskError("oracle_equal needs words with the same source")
    if u == v:
        return "yes"
    if not u or not v:
        return "no"  # a nonempty word is never equivalent to the identity
    if u[-1].target != v[-1].target:
        return "no"
    cu = closure(u, caps, stop_at=v)
    if v in cu.words:
        return "yes"
    if cu.complete:
        return "no"
    cv = closure(v, caps, stop_at=u)
    if u in cv.words or cu.words & cv.words:
        return "yes"
    if cv.complete:
        return "no"
    return "inconclusive"


def class_lengths(word: Sequence[Move], caps: Caps = Caps()) -> tuple[set[int], bool]:
    """Letter counts occurring in the class of ``word`` and completeness."""
    cl = closure(word, caps)
    return {len(w) for w in cl.words}, cl.complete


# ----------------------------------------------------------------------
# classical lattices


def weak_order(n: int) -> FinitePoset:
    """Right weak order on permutations of ``0..n-1``.

    Covers swap two adjacent positions holding an increasing pair; the
    cover label is the position.
    """
    if n < 1:
        raise ValueError("n must be positive")
    perms = sorted(permutations(range(n)), key=lambda p: (_inversions(p), p))
    index = {p: i for i, p in enumerate(perms)}
    covers = []
    for p in perms:
        for i in range(n - 1):
            if p[i] < p[i + 1]:
                q = p[:i] + (p[i + 1], p[i]) + p[i + 2:]
                covers.append((index[p], i, index[q]))
    return FinitePoset([list(p) for p in perms], covers)


def _inversions(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def binary_trees(k: int) -> list:
    """All binary trees with ``k`` internal nodes; a leaf is ``None``."""
    return list(_trees(k))


@lru_cache(maxsize=None)
def _trees(k: int) -> tuple:
    if k == 0:
        return (None,)
    out = []
    for left in range(k):
        for a in _trees(left):
            for b in _trees(k - 1 - left):
                out.append((a, b))
    return tuple(out)


def _right_rotations(t):
    """Trees obtained by one right rotation ``((A, B), C) -> (A, (B, C))``."""
    if t is None:
        return
    a, c = t
    if a is not None:
        yield (a[0], (a[1], c))
    for a2 in _right_rotations(a):
        yield (a2, c)
    for c2 in _right_rotations(c):
        yield (a, c2)


def _bracketing(t) -> str:
    counter = iter(range(10_000))

    def rec(node):
        if node is None:
            return str(next(counter))
        return "(" + rec(node[0]) + rec(node[1]) + ")"

    return rec(t)


def classical_tamari(k: int) -> FinitePoset:
    """Tamari lattice on binary trees with ``k`` internal nodes (right rotation)."""
    trees = binary_trees(k)
    index = {t: i for i, t in enumerate(trees)}
    covers = []
    for t in trees:
        for s in _right_rotations(t):
            covers.append((index[t], None, index[s]))
    return FinitePoset([_bracketing(t) for t in trees], sorted(set(covers), key=lambda c: (c[0], c[2])))
