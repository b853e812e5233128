"""Combinatorial labelled disks.

An object is a decomposition of a disk with ``m`` marked boundary vertices
into ``n`` faces by ``n - 1`` non-crossing arcs (chords) joining boundary
vertices.  Parallel copies of the same chord are allowed; two neighbouring
copies bound a bigon.  Face sizes must reproduce the label multiset.

Vertices are numbered counterclockwise.  The whole package uses
:data:`POSITIVE` as the one direction constant: a positive move advances arc
endpoints counterclockwise.

Internally an object is the sorted tuple of its chords.  Copies of one chord
``(i, j)`` with ``i < j`` are ordered from the copy nearest the boundary path
``i, i+1, ..., j`` outwards.  This numbering coincides with first-occurrence
numbering when the per-vertex rotation lists are scanned in vertex order, so
the chord tuple *is* the canonical form.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

POSITIVE = 1  # counterclockwise

KEY_PREFIX = "v1:"

# Tokens for the two boundary edges at a vertex inside a "full" rotation list.
_NEXT = -1  # boundary edge from v to v+1 (first in ccw order)
_PREV = -2  # boundary edge from v-1 to v (last in ccw order)


class DiskError(ValueError):
    """Invalid labelling, object, arc id or serialized form."""


class ObjectCapExceeded(RuntimeError):
    """Raised when an enumeration grows beyond its configured cap."""


@dataclass(frozen=True)
class Labelling:
    labels: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return 2 + sum(x - 2 for x in self.labels)

    @property
    def sorted_labels(self) -> tuple[int, ...]:
        return tuple(sorted(self.labels))

    def __str__(self) -> str:
        return ",".join(map(str, self.labels))


def validate(labels: Iterable[int]) -> Labelling:
    """Check a label list and return the corresponding :class:`Labelling`."""
    labels = tuple(labels)
    if not labels:
        raise DiskError("a labelling needs at least one puncture")
    for x in labels:
        if isinstance(x, bool) or not isinstance(x, int):
            raise DiskError(f"labels must be integers, got {x!r}")
        if x < 2:
            raise DiskError(f"every label must be at least 2, got {x}")
    return Labelling(labels)


def parse_labels(text: str) -> Labelling:
    try:
        values = [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError as exc:
        raise DiskError(f"cannot parse labels {text!r}") from exc
    return validate(values)


@dataclass(frozen=True)
class Face:
    """A face of a decomposition as a closed counterclockwise walk.

    ``walk`` lists ``(vertex, edge)`` pairs: the walk leaves ``vertex`` along
    ``edge``.  Edges are ``("b", v)`` for the boundary edge ``v -> v+1`` or
    ``("a", arc_id)`` for an arc.
    """

    walk: tuple[tuple[int, tuple[str, int]], ...]

    @property
    def size(self) -> int:
        return len(self.walk)

    @property
    def edges(self) -> tuple[tuple[str, int], ...]:
        return tuple(edge for _, edge in self.walk)

    def arcs(self) -> list[int]:
        return [k for kind, k in self.edges if kind == "a"]


@dataclass(frozen=True)
class MoveResult:
    """Outcome of a rotation: the target and the arc correspondence.

    ``correspondence`` maps every arc id of the source to its id in the
    target (moved arcs included).  ``travel`` maps each moved arc to the
    pairs ``(old_vertex, new_vertex)`` of its two endpoints.
    """

    target: "DiskObject"
    correspondence: dict[int, int]
    travel: dict[int, tuple[tuple[int, int], tuple[int, int]]]


class DiskObject:
    """An object of the groupoid: a canonical chord multiset.

    Instances are immutable and interned, so equal objects are identical
    and the expensive derived data (rotation, faces) is computed once.
    Use :meth:`from_chords`, :func:`parse_key` or :func:`from_json`.
    """

    __slots__ = ("labels", "m", "chords", "key", "__dict__")

    _interned: dict[tuple, "DiskObject"] = {}

    def __init__(self, labels: tuple[int, ...], m: int, chords: tuple[tuple[int, int], ...]):
        self.labels = labels
        self.m = m
        self.chords = chords
        self.key = _make_key(labels, self._rotation_of(m, chords))

    @classmethod
    def from_chords(cls, labels: Iterable[int], chords: Iterable[Sequence[int]], check: bool = True) -> "DiskObject":
        lab = validate(labels)
        m = lab.m
        norm = []
        for chord in chords:
            if len(chord) != 2:
                raise DiskError(f"an arc needs two endpoints, got {chord!r}")
            u, v = (int(c) for c in chord)
            if not (0 <= u < m and 0 <= v < m):
                raise DiskError(f"arc endpoint out of range 0..{m - 1}: {chord!r}")
            if u == v:
                raise DiskError(f"arcs must join distinct vertices: {chord!r}")
            norm.append((min(u, v), max(u, v)))
        ident = (lab.sorted_labels, tuple(sorted(norm)))
        obj = cls._interned.get(ident)
        if obj is not None:
            return obj
        obj = cls(lab.sorted_labels, m, ident[1])
        if check:
            obj._check()
        cls._interned[ident] = obj
        return obj

    # -- identity -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DiskObject) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "DiskObject") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"DiskObject({self.key!r})"

    def __reduce__(self):
        return (DiskObject.from_chords, (self.labels, self.chords, False))

    # -- derived data ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def arc_count(self) -> int:
        return len(self.chords)

    @property
    def labelling(self) -> Labelling:
        return Labelling(self.labels)

    @staticmethod
    def _rotation_of(m: int, chords) -> tuple[tuple[int, ...], ...]:
        ends: list[list[tuple[int, int, int]]] = [[] for _ in range(m)]
        first: dict[tuple[int, int], int] = {}
        for k, chord in enumerate(chords):
            t = k - first.setdefault(chord, k)
            i, j = chord
            ends[i].append(((j - i) % m, t, k))
            ends[j].append(((i - j) % m, -t, k))
        return tuple(tuple(k for *_, k in sorted(lst)) for lst in ends)

    @cached_property
    def rotation(self) -> tuple[tuple[int, ...], ...]:
        """Counterclockwise arc ids at each vertex, boundary edges excluded."""
        return self._rotation_of(self.m, self.chords)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return _trace_faces(self.m, self.rotation)

    @cached_property
    def arc_faces(self) -> dict[int, tuple[int, int]]:
        """For each arc the indices of its two faces (in :attr:`faces`)."""
        seen: dict[int, list[int]] = defaultdict(list)
        for idx, face in enumerate(self.faces):
            for arc in face.arcs():
                seen[arc].append(idx)
        return {arc: tuple(idxs) for arc, idxs in sorted(seen.items())}

    def _check(self) -> None:
        for a, (i, j) in enumerate(self.chords):
            for b in range(a + 1, len(self.chords)):
                k, l = self.chords[b]
                if i < k < j < l or k < i < l < j:
                    raise DiskError(f"arcs {(i, j)} and {(k, l)} cross")
        if len(self.chords) != self.n - 1:
            raise DiskError(f"expected {self.n - 1} arcs, got {len(self.chords)}")
        sizes = sorted(face.size for face in self.faces)
        if len(sizes) != self.n or tuple(sizes) != self.labels:
            raise DiskError(f"face sizes {sizes} do not match labels {list(self.labels)}")

    def check_arc(self, arc: int) -> None:
        if isinstance(arc, bool) or not isinstance(arc, int) or not 0 <= arc < self.arc_count:
            raise DiskError(f"invalid arc id {arc!r} (object has {self.arc_count} arcs)")

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "arcs": [list(c) for c in self.chords],
            "rotation": {str(v): list(r) for v, r in enumerate(self.rotation)},
        }


def _make_key(labels, rotation) -> str:
    head = ",".join(map(str, labels))
    body = ";".join(",".join(map(str, r)) for r in rotation)
    return f"{KEY_PREFIX}{head}|{body}"


def canonical_key(x: DiskObject) -> str:
    return x.key


def parse_key(key: str) -> DiskObject:
    """Rebuild an object from its canonical key; rejects non-canonical keys."""
    if not isinstance(key, str) or not key.startswith(KEY_PREFIX) or "|" not in key:
        raise DiskError(f"not a canonical key: {key!r}")
    head, body = key[len(KEY_PREFIX):].split("|", 1)
    try:
        labels = [int(t) for t in head.split(",")]
        lists = [[int(t) for t in part.split(",") if t != ""] for part in body.split(";")]
    except ValueError as exc:
        raise DiskError(f"malformed key {key!r}") from exc
    lab = validate(labels)
    if len(lists) != lab.m:
        raise DiskError(f"key lists {len(lists)} vertices, labelling needs {lab.m}")
    where: dict[int, list[int]] = defaultdict(list)
    for v, lst in enumerate(lists):
        for a in lst:
            where[a].append(v)
    if sorted(where) != list(range(len(where))) or any(len(vs) != 2 for vs in where.values()):
        raise DiskError(f"malformed arc lists in key {key!r}")
    obj = DiskObject.from_chords(lab.labels, [where[a] for a in sorted(where)])
    if obj.key != key:
        raise DiskError(f"key is not in canonical form: {key!r}")
    return obj


def from_json(data: dict) -> DiskObject:
    """Build an object from ``{"labels": [...], "arcs": [[u, v], ...]}``.

    A ``"rotation"`` entry, when present, must agree with the derived one.
    """
    if not isinstance(data, dict) or "labels" not in data or "arcs" not in data:
        raise DiskError("object JSON needs 'labels' and 'arcs'")
    obj = DiskObject.from_chords(data["labels"], data["arcs"])
    rotation = data.get("rotation")
    if rotation is not None:
        given = {int(v): list(r) for v, r in rotation.items()}
        derived = {v: list(r) for v, r in enumerate(obj.rotation)}
        if given != {v: r for v, r in derived.items() if v in given}:
            raise DiskError("rotation does not match the canonical rotation of these arcs")
    return obj


def loads(text: str) -> DiskObject:
    """Accept either a canonical key or a JSON object description."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DiskError(f"malformed object JSON: {exc}") from exc
    return parse_key(text)


# ----------------------------------------------------------------------
# face tracing on rotation lists


def _full(rot: Sequence[Sequence[int]], v: int) -> list[int]:
    return [_NEXT, *rot[v], _PREV]


def _locate(rot: Sequence[Sequence[int]]) -> dict[int, list[tuple[int, int]]]:
    """Arc id -> list of (vertex, full-list index) for both ends."""
    where: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for v, lst in enumerate(rot):
        for idx, a in enumerate(lst):
            where[a].append((v, idx + 1))
    return where


def _leave(m, rot, where, v: int, k: int) -> tuple[int, int]:
    """Leave vertex ``v`` along full-list end ``k``; return the arrival end."""
    full_len = len(rot[v]) + 2
    if k == 0:
        u = (v + 1) % m
        return u, len(rot[u]) + 1
    if k == full_len - 1:
        return (v - 1) % m, 0
    arc = rot[v][k - 1]
    for u, p in where[arc]:
        if (u, p) != (v, k):
            return u, p
    raise AssertionError("arc with a single end")


def _trace_faces(m: int, rot: Sequence[Sequence[int]]) -> tuple[Face, ...]:
    where = _locate(rot)
    seen: set[tuple[int, int]] = set()
    faces = []
    for v in range(m):
        for k in range(len(rot[v]) + 1):
            if (v, k) in seen:
                continue
            walk = []
            cur = (v, k)
            while cur not in seen:
                seen.add(cur)
                cv, ck = cur
                edge = ("b", cv) if ck == 0 else ("a", rot[cv][ck - 1])
                walk.append((cv, edge))
                u, p = _leave(m, rot, where, cv, ck)
                cur = (u, p - 1)
            if cur != (v, k):
                raise AssertionError("face walk did not close")
            faces.append(Face(tuple(walk)))
    return tuple(faces)


def faces(x: DiskObject) -> tuple[Face, ...]:
    return x.faces


# ----------------------------------------------------------------------
# moves


def _canonicalize(labels, m, rot: list[list[int]]) -> tuple[DiskObject, dict[int, int]]:
    """Renumber tokens by first occurrence and intern the resulting object."""
    order: dict[int, int] = {}
    ends: dict[int, list[int]] = defaultdict(list)
    for v, lst in enumerate(rot):
        for tok in lst:
            order.setdefault(tok, len(order))
            ends[tok].append(v)
    chords = [tuple(sorted(ends[tok])) for tok in sorted(order, key=order.get)]
    obj = DiskObject.from_chords(labels, chords, check=False)
    return obj, order


def _rotate(x: DiskObject, arcs: Sequence[int], direction: int = POSITIVE) -> MoveResult:
    """Remove ``arcs`` and reinsert every end one step along its merged face.

    For the positive direction an end leaves its corner along the edge just
    before it (counterclockwise) and is reinserted just before the arrival
    end; the negative direction mirrors this.  Several ends landing in the
    same corner come from the same original corner and keep their order.
    """
    m = x.m
    moved = set(arcs)
    rot = [list(r) for r in x.rotation]
    kept = [[a for a in lst if a not in moved] for lst in rot]
    where = _locate(kept)
    landing: dict[tuple[int, int], list[tuple[int, int, int]]] = defaultdict(list)
    for v, lst in enumerate(rot):
        before = 0
        for pos, a in enumerate(lst):
            if a not in moved:
                before += 1
                continue
            if direction == POSITIVE:
                u, p = _leave(m, kept, where, v, before)
                slot = p - 1
            else:
                u, p = _leave(m, kept, where, v, before + 1)
                slot = p
            landing[(u, slot)].append((pos, a, v))
    travel: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for (u, slot), group in sorted(landing.items(), key=lambda kv: (kv[0][0], -kv[0][1])):
        group.sort(reverse=(direction == POSITIVE))
        for _, a, v in group:
            kept[u].insert(slot, a)
            travel[a].append((v, u))
    target, order = _canonicalize(x.labels, m, kept)
    return MoveResult(
        target,
        {a: order[a] for a in range(x.arc_count)},
        {a: tuple(sorted(travel[a])) for a in arcs},
    )


def rotate_arc(x: DiskObject, arc: int) -> MoveResult:
    """Positive elementary move: rotate both ends of ``arc`` one edge ccw."""
    x.check_arc(arc)
    return _rotate_cached(x, arc, POSITIVE)


def unrotate_arc(x: DiskObject, arc: int) -> MoveResult:
    """Inverse elementary move: rotate both ends of ``arc`` one edge clockwise."""
    x.check_arc(arc)
    return _rotate_cached(x, arc, -POSITIVE)


@lru_cache(maxsize=200_000)
def _rotate_cached(x: DiskObject, arc: int, direction: int) -> MoveResult:
    return _rotate(x, [arc], direction)


def diagonal_move(x: DiskObject, arcs: Iterable[int]) -> DiskObject:
    """Rotate several arcs simultaneously (full diagonal morphism)."""
    arcs = list(arcs)
    if not arcs:
        raise DiskError("diagonal_move needs at least one arc")
    if len(set(arcs)) != len(arcs):
        raise DiskError(f"duplicate arc ids in {arcs}")
    for a in arcs:
        x.check_arc(a)
    return _rotate(x, arcs).target


def shift_with_correspondence(x: DiskObject, k: int) -> tuple[DiskObject, dict[int, int]]:
    m = x.m
    k %= m
    if k == 0:
        return x, {a: a for a in range(x.arc_count)}
    rot = [list(x.rotation[(v - k) % m]) for v in range(m)]
    target, order = _canonicalize(x.labels, m, rot)
    return target, {a: order[a] for a in range(x.arc_count)}


def shift(x: DiskObject, k: int) -> DiskObject:
    """Rigidly turn the disk by ``k`` vertices counterclockwise."""
    return shift_with_correspondence(x, k)[0]


# ----------------------------------------------------------------------
# constructors


def fan(lab: Labelling, q0: int = 0, region_order: Sequence[int] | None = None) -> DiskObject:
    """The decomposition where every arc ends at ``q0``.

    Regions are laid out counterclockwise starting at the boundary edge
    leaving ``q0``, with labels taken in ``region_order``.
    """
    n, m = lab.n, lab.m
    if region_order is None:
        region_order = list(range(n))
    region_order = list(region_order)
    if sorted(region_order) != list(range(n)):
        raise DiskError(f"region order {region_order} is not a permutation of 0..{n - 1}")
    if not 0 <= q0 < m:
        raise DiskError(f"vertex {q0} out of range 0..{m - 1}")
    chords = []
    pos = 0
    for idx in region_order[:-1]:
        pos += lab.labels[idx] - 2
        chords.append((q0, (q0 + pos + 1) % m))
    return DiskObject.from_chords(lab.labels, chords)


def enumerate_objects(lab: Labelling, cap: int = 100_000) -> list[DiskObject]:
    """All decompositions for a labelling, sorted by canonical key.

    The face through the boundary edge ``m-1 -> 0`` is peeled off first;
    each arc on its walk closes a smaller sub-disk that is decomposed
    recursively with a sub-multiset of the labels.
    """
    m = lab.m
    counts = Counter(lab.labels)
    found: dict[str, DiskObject] = {}
    for chords in _sub_disk(m - 1, _freeze(counts)):
        obj = DiskObject.from_chords(lab.labels, chords)
        found.setdefault(obj.key, obj)
        if len(found) > cap:
            raise ObjectCapExceeded(f"more than {cap} objects for labelling {lab}")
    return [found[k] for k in sorted(found)]


def _freeze(counts: Counter) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((k, v) for k, v in counts.items() if v))


def _excess(labels: tuple[tuple[int, int], ...]) -> int:
    return sum((k - 2) * v for k, v in labels)


@lru_cache(maxsize=None)
def _sub_disk(width: int, labels: tuple[tuple[int, int], ...]) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Decompositions of the polygon on vertices ``0..width`` closed by ``width -> 0``.

    Returns chord tuples in relative coordinates; the closing side itself is
    not included.
    """
    if width < 1 or _excess(labels) != width - 1 or not labels:
        return ()
    results = []
    for face_label, _ in labels:
        rest = Counter(dict(labels))
        rest[face_label] -= 1
        steps = face_label - 1
        for chords in _face_walks(0, width, steps, _freeze(rest)):
            results.append(chords)
    return tuple(results)


def _face_walks(start: int, end: int, steps: int, labels):
    """Ways to walk from ``start`` to ``end`` in exactly ``steps`` edges.

    Each step is a boundary edge (width 1, no labels) or a chord enclosing a
    nonempty sub-disk that consumes a sub-multiset of ``labels``.
    """
    if steps == 0:
        if start == end and not labels:
            yield ()
        return
    remaining = end - start
    if remaining < steps:
        return
    for nxt in range(start + 1, end - steps + 2):
        width = nxt - start
        if width == 1:
            for tail in _face_walks(nxt, end, steps - 1, labels):
                yield tail
        for part, rest in _split(labels, width - 1):
            for inner in _sub_disk(width, part):
                shifted = ((start, nxt),) + tuple((start + i, start + j) for i, j in inner)
                for tail in _face_walks(nxt, end, steps - 1, rest):
                    yield shifted + tail


def _split(labels, excess: int):
    """Nonempty sub-multisets with the given excess, paired with the rest."""
    items = list(labels)

    def rec(idx, remaining, chosen):
        if idx == len(items):
            if remaining == 0 and any(chosen):
                part = tuple((items[i][0], c) for i, c in enumerate(chosen) if c)
                rest = tuple((items[i][0], items[i][1] - c) for i, c in enumerate(chosen) if items[i][1] - c)
                yield part, rest
            return
        label, count = items[idx]
        for c in range(count + 1):
            used = c * (label - 2)
            if used > remaining:
                break
            yield from rec(idx + 1, remaining - used, chosen + [c])

    yield from rec(0, excess, [])
