"""Generators and relations of the groupoid.

Atoms are elementary moves (one arc rotated).  For two atoms ``a != b`` at
the same object, :func:`complement` returns the tails of the unique
elementary relation ``a . f(a, b) = b . f(b, a)``.  The relation type is
read off from how the two arcs meet:

* no common face: the moves commute (``ER1``);
* a common face in which neither arc directly follows the other in the
  counterclockwise walk: the moves still commute (``ER2``);
* a common face in which exactly one arc directly follows the other: a
  pentagon (``ER3``) whose short side starts with the following arc;
* a common bigon bounded by the two arcs alone: a hexagon (``ER4``), the
  braid relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .disk import DiskError, DiskObject, MoveResult, rotate_arc, shift_with_correspondence


class CapExceeded(RuntimeError):
    """A configurable resource cap was hit."""


@dataclass(frozen=True)
class Move:
    """One elementary morphism: rotate ``arc`` of ``source``."""

    source: DiskObject
    arc: int

    def __post_init__(self):
        self.source.check_arc(self.arc)

    @property
    def result(self) -> MoveResult:
        return rotate_arc(self.source, self.arc)

    @property
    def target(self) -> DiskObject:
        return self.result.target

    @property
    def correspondence(self) -> dict[int, int]:
        return self.result.correspondence

    @property
    def image(self) -> int:
        """Id of the rotated arc in the target."""
        return self.result.correspondence[self.arc]

    def __repr__(self) -> str:
        return f"Move({self.source.key!r}, {self.arc})"


Word = tuple  # tuple[Move, ...]; the empty tuple is the identity


@dataclass(frozen=True)
class ElementaryRelation:
    left: tuple[Move, ...]
    right: tuple[Move, ...]
    kind: str

    @property
    def source(self) -> DiskObject:
        return self.left[0].source

    def lengths(self) -> tuple[int, int]:
        return len(self.left), len(self.right)


def atoms(x: DiskObject) -> list[Move]:
    return [Move(x, a) for a in range(x.arc_count)]


def word_target(word: Sequence[Move], source: DiskObject) -> DiskObject:
    return word[-1].target if word else source


def is_composable(word: Sequence[Move], source: DiskObject | None = None) -> bool:
    cur = source if source is not None else (word[0].source if word else None)
    for mv in word:
        if mv.source != cur:
            return False
        cur = mv.target
    return True


def word_from_arcs(source: DiskObject, arcs: Iterable[int]) -> Word:
    """Letters given by arc id at each successive object."""
    out = []
    cur = source
    for a in arcs:
        mv = Move(cur, int(a))
        out.append(mv)
        cur = mv.target
    return tuple(out)


def word_arcs(word: Sequence[Move]) -> list[int]:
    return [mv.arc for mv in word]


def tracked_word(source: DiskObject, arcs: Sequence[int]) -> Word:
    """Rotate arcs named by their ids *at the source*, following them along."""
    ids = {a: a for a in range(source.arc_count)}
    cur = source
    out = []
    for a in arcs:
        mv = Move(cur, ids[a])
        out.append(mv)
        corr = mv.correspondence
        ids = {k: corr[v] for k, v in ids.items()}
        cur = mv.target
    return tuple(out)


def word_to_json(source: DiskObject, word: Sequence[Move]) -> dict:
    return {"source": source.key, "arcs": word_arcs(word)}


def word_from_json(data: dict) -> tuple[DiskObject, Word]:
    from .disk import parse_key

    if not isinstance(data, dict) or "source" not in data or "arcs" not in data:
        raise DiskError("word JSON needs 'source' and 'arcs'")
    source = parse_key(data["source"])
    return source, word_from_arcs(source, data["arcs"])


# ----------------------------------------------------------------------
# relations


def classify(x: DiskObject, a: int, b: int) -> str:
    """Relation type for the arcs ``a`` and ``b`` of ``x``."""
    kind, _ = _configuration(x, a, b)
    return kind


def _configuration(x: DiskObject, a: int, b: int) -> tuple[str, int | None]:
    shared = set(x.arc_faces[a]) & set(x.arc_faces[b])
    if not shared:
        return "ER1", None
    (idx,) = shared
    edges = x.faces[idx].edges
    size = len(edges)
    ia = edges.index(("a", a))
    ib = edges.index(("a", b))
    b_follows_a = (ia + 1) % size == ib
    a_follows_b = (ib + 1) % size == ia
    if a_follows_b and b_follows_a:
        return "ER4", None
    if not (a_follows_b or b_follows_a):
        return "ER2", None
    return "ER3", (a if a_follows_b else b)


@lru_cache(maxsize=500_000)
def _complement(x: DiskObject, a: int, b: int) -> tuple[Word, Word, str]:
    kind, short = _configuration(x, a, b)
    if kind in ("ER1", "ER2"):
        left, right = tracked_word(x, [a, b]), tracked_word(x, [b, a])
    elif kind == "ER4":
        left, right = tracked_word(x, [a, b, a]), tracked_word(x, [b, a, b])
    else:
        long_ = b if short == a else a
        seqs = {short: [short, long_], long_: [long_, short, long_]}
        left, right = tracked_word(x, seqs[a]), tracked_word(x, seqs[b])
    return left[1:], right[1:], kind


def complement(a: Move, b: Move) -> tuple[Word, Word]:
    """Tails ``(f(a, b), f(b, a))`` of the relation starting with ``a`` and ``b``."""
    _check_pair(a, b)
    tail_ab, tail_ba, _ = _complement(a.source, a.arc, b.arc)
    return tail_ab, tail_ba


def relation(a: Move, b: Move) -> ElementaryRelation:
    _check_pair(a, b)
    tail_ab, tail_ba, kind = _complement(a.source, a.arc, b.arc)
    return ElementaryRelation((a, *tail_ab), (b, *tail_ba), kind)


def _check_pair(a: Move, b: Move) -> None:
    if a.source != b.source:
        raise DiskError("complement needs two moves with the same source")
    if a.arc == b.arc:
        raise DiskError("complement needs two distinct moves")


def relations(x: DiskObject) -> list[ElementaryRelation]:
    """One relation per unordered pair of atoms, in arc-id order."""
    out = []
    for a in range(x.arc_count):
        for b in range(a + 1, x.arc_count):
            out.append(relation(Move(x, a), Move(x, b)))
    return out


# ----------------------------------------------------------------------
# weight


def weight(move: Move) -> int:
    """Number of boundary edges left on the same side of the arc before and after.

    Equals ``m`` minus the counterclockwise distances travelled by the two
    endpoints of the rotated arc.
    """
    m = move.source.m
    travelled = sum((new - old) % m for old, new in move.result.travel[move.arc])
    return m - travelled


def word_weight(word: Iterable[Move]) -> int:
    return sum(weight(mv) for mv in word)


def relation_is_sound(left: Sequence[Move], right: Sequence[Move]) -> bool:
    """Both sides composable, same source and target, same total weight."""
    if not left or not right:
        return False
    if left[0].source != right[0].source:
        return False
    if not (is_composable(left) and is_composable(right)):
        return False
    if left[-1].target != right[-1].target:
        return False
    return word_weight(left) == word_weight(right)


# ----------------------------------------------------------------------
# Garside automorphism on moves


def phi_move(move: Move, k: int = 1) -> Move:
    """The same rotation performed on the disk turned by ``k`` vertices."""
    target, corr = shift_with_correspondence(move.source, k)
    return Move(target, corr[move.arc])


def phi_word(word: Sequence[Move], k: int = 1) -> Word:
    return tuple(phi_move(mv, k) for mv in word)


# ----------------------------------------------------------------------
# characteristic graphs


@dataclass
class CharGraph:
    initial: DiskObject
    rank: int
    nodes: list[DiskObject]
    edges: list[tuple[int, int, int]]  # (node, arc, node)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def to_json(self) -> dict:
        return {
            "initial": self.initial.key,
            "rank": self.rank,
            "nodes": [x.key for x in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph chargraph {"]
        for i, x in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{i}: {x.key}"];')
        for s, a, t in self.edges:
            lines.append(f'  n{s} -> n{t} [label="{a}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Saturation:
    """Union-find over word nodes closed under elementary relations."""

    def __init__(self, cap: int):
        self.cap = cap
        self.obj: list[DiskObject] = []
        self.out: list[dict[int, int]] = []
        self.parent: list[int] = []

    def new(self, x: DiskObject) -> int:
        if len(self.obj) >= self.cap:
            raise CapExceeded(f"characteristic graph exceeds {self.cap} nodes")
        self.obj.append(x)
        self.out.append({})
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def step(self, node: int, mv: Move) -> int:
        r = self.find(node)
        nxt = self.out[r].get(mv.arc)
        if nxt is None:
            nxt = self.new(mv.target)
            self.out[r][mv.arc] = nxt
        return self.find(nxt)

    def walk(self, node: int, word: Sequence[Move]) -> int:
        for mv in word:
            node = self.step(node, mv)
        return node

    def union(self, p: int, q: int) -> None:
        pending = [(p, q)]
        while pending:
            p, q = (self.find(i) for i in pending.pop())
            if p == q:
                continue
            if self.obj[p] != self.obj[q]:
                raise AssertionError("merging nodes with different objects")
            if len(self.out[p]) < len(self.out[q]):
                p, q = q, p
            self.parent[q] = p
            for arc, t in self.out[q].items():
                if arc in self.out[p]:
                    pending.append((self.out[p][arc], t))
                else:
                    self.out[p][arc] = t
            self.out[q] = {}


def characteristic_graph(x: DiskObject, arcs: Iterable[int], node_cap: int = 10_000) -> CharGraph:
    """Saturate the atoms ``arcs`` at ``x`` under the elementary relations."""
    arcs = sorted(set(arcs))
    if not arcs:
        raise DiskError("a characteristic graph needs at least one arc")
    for a in arcs:
        x.check_arc(a)
    sat = _Saturation(node_cap)
    root = sat.new(x)
    for a in arcs:
        sat.step(root, Move(x, a))
    done: set[tuple[int, int, int]] = set()
    changed = True
    while changed:
        changed = False
        for i in range(len(sat.obj)):
            r = sat.find(i)
            if r != i:
                continue
            out = sorted(sat.out[r])
            for p in range(len(out)):
                for q in range(p + 1, len(out)):
                    key = (r, out[p], out[q])
                    if key in done:
                        continue
                    done.add(key)
                    changed = True
                    rel = relation(Move(sat.obj[r], out[p]), Move(sat.obj[r], out[q]))
                    end_left = sat.walk(r, rel.left)
                    end_right = sat.walk(r, rel.right)
                    sat.union(end_left, end_right)
                    r = sat.find(r)
    roots = sorted({sat.find(i) for i in range(len(sat.obj))})
    # number nodes by breadth-first order from the initial node, arcs ascending
    order = {sat.find(root): 0}
    queue = [sat.find(root)]
    for r in queue:
        for arc in sorted(sat.out[r]):
            t = sat.find(sat.out[r][arc])
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    assert len(order) == len(roots)
    nodes = [None] * len(order)
    for r, i in order.items():
        nodes[i] = sat.obj[r]
    edges = sorted(
        (order[r], arc, order[sat.find(t)]) for r in order for arc, t in sat.out[r].items()
    )
    return CharGraph(x, len(arcs), nodes, edges)
