"""Finite posets, the interval of simple elements, and Tamari orders."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import networkx as nx

from .disk import DiskError, DiskObject, Labelling, enumerate_objects, fan
from .presentation import CapExceeded, Move, Word, atoms, word_arcs, word_target


@dataclass
class FinitePoset:
    """A finite poset given by its Hasse diagram.

    ``covers`` holds ``(lower, label, upper)`` triples of element indices.
    """

    elements: list[Any]
    covers: list[tuple[int, Any, int]]

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _up(self) -> list[int]:
        """Bitmask of the up-set of each element (the element included)."""
        n = len(self.elements)
        succ: list[list[int]] = [[] for _ in range(n)]
        indeg = [0] * n
        for lo, _, hi in self.covers:
            succ[lo].append(hi)
            indeg[hi] += 1
        order = [i for i in range(n) if indeg[i] == 0]
        for i in order:
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) != n:
            raise ValueError("cover relation has a cycle")
        up = [1 << i for i in range(n)]
        for i in reversed(order):
            for j in succ[i]:
                up[i] |= up[j]
        return up

    def leq(self, i: int, j: int) -> bool:
        return bool(self._up[i] >> j & 1)

    def upper_bounds(self, i: int, j: int) -> int:
        return self._up[i] & self._up[j]

    def lower_bounds(self, i: int, j: int) -> int:
        return self._down[i] & self._down[j]

    @cached_property
    def _down(self) -> list[int]:
        n = len(self.elements)
        down = [0] * n
        for i in range(n):
            mask = self._up[i]
            for j in _bits(mask):
                down[j] |= 1 << i
        return down

    def least(self, mask: int) -> int | None:
        """The least element of a subset given as a bitmask, if it exists."""
        for i in _bits(mask):
            if self._up[i] & mask == mask:
                return i
        return None

    def greatest(self, mask: int) -> int | None:
        for i in _bits(mask):
            if self._down[i] & mask == mask:
                return i
        return None

    def join(self, i: int, j: int) -> int | None:
        return self.least(self.upper_bounds(i, j))

    def meet(self, i: int, j: int) -> int | None:
        return self.greatest(self.lower_bounds(i, j))

    @property
    def bottom(self) -> int | None:
        return self.least((1 << len(self.elements)) - 1)

    @property
    def top(self) -> int | None:
        return self.greatest((1 << len(self.elements)) - 1)

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.elements)))
        g.add_edges_from((lo, hi) for lo, _, hi in self.covers)
        return g

    def degree_profile(self) -> list[tuple[int, int]]:
        """Sorted (in-degree, out-degree) pairs of the Hasse diagram."""
        g = self.digraph()
        return sorted((g.in_degree(v), g.out_degree(v)) for v in g.nodes)

    def element_label(self, i: int) -> str:
        return str(self.elements[i])

    def to_json(self) -> dict:
        return {
            "elements": [_jsonable(e) for e in self.elements],
            "covers": [[lo, lab, hi] for lo, lab, hi in self.covers],
            "top": self.top,
            "bottom": self.bottom,
        }

    def to_dot(self, name: str = "hasse") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i in range(len(self.elements)):
            lines.append(f'  n{i} [label="{_escape(self.element_label(i))}"];')
        for lo, lab, hi in self.covers:
            attr = f' [label="{lab}"]' if lab is not None else ""
            lines.append(f"  n{lo} -> n{hi}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _jsonable(e):
    if isinstance(e, (str, int, float, list, dict)) or e is None:
        return e
    if hasattr(e, "to_json"):
        return e.to_json()
    return str(e)


def is_order_isomorphic(p: FinitePoset, q: FinitePoset) -> bool:
    """Order isomorphism, decided as isomorphism of Hasse digraphs."""
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return False
    return nx.is_isomorphic(p.digraph(), q.digraph())


# ----------------------------------------------------------------------
# interval of simple elements


@dataclass
class IntervalLattice(FinitePoset):
    """Simple elements at ``base``: canonical words ordered by left division."""

    base: DiskObject | None = None
    words: list[Word] = field(default_factory=list)
    layers: list[int] = field(default_factory=list)

    def targets(self) -> list[DiskObject]:
        return [word_target(w, self.base) for w in self.words]

    def index_of(self, word: Sequence[Move]) -> int | None:
        from .engine import canonical_word

        canon = canonical_word(word, self.base)
        return self._index.get(canon)

    @cached_property
    def _index(self) -> dict[Word, int]:
        return {w: i for i, w in enumerate(self.words)}

    def element_label(self, i: int) -> str:
        from .engine import greedy_normal_form

        nf = greedy_normal_form(self.words[i], self.base)
        text = "|".join(".".join(map(str, word_arcs(f))) for f in nf) or "e"
        return f"{i}: {text}"

    def to_json(self) -> dict:
        data = super().to_json()
        data["base"] = self.base.key
        data["elements"] = [
            {"id": i, "arcs": word_arcs(w), "target": word_target(w, self.base).key, "layer": self.layers[i]}
            for i, w in enumerate(self.words)
        ]
        return data


def interval(x: DiskObject, node_cap: int = 100_000) -> IntervalLattice:
    """All left divisors of the Garside element at ``x``, breadth first."""
    from .engine import canonical_word, delta, left_divides

    top = delta(x)
    words: list[Word] = [()]
    index: dict[Word, int] = {(): 0}
    layers = [0]
    covers = []
    layer = [()]
    depth = 0
    while layer:
        found: dict[Word, list[tuple[int, int]]] = {}
        for s in layer:
            rest = left_divides(s, top)
            if rest is None:  # pragma: no cover - every element divides top
                raise AssertionError("interval element does not divide delta")
            cur = word_target(s, x)
            for a in atoms(cur):
                if left_divides((a,), rest) is None:
                    continue
                t = canonical_word(s + (a,), x)
                if t in index:
                    covers.append((index[s], a.arc, index[t]))
                else:
                    found.setdefault(t, []).append((index[s], a.arc))
        depth += 1
        layer = sorted(found, key=word_arcs)
        for t in layer:
            index[t] = len(words)
            words.append(t)
            layers.append(depth)
            if len(words) > node_cap:
                raise CapExceeded(f"interval exceeds {node_cap} elements")
            for lo, arc in found[t]:
                covers.append((lo, arc, index[t]))
    covers.sort()
    return IntervalLattice(elements=[word_arcs(w) for w in words], covers=covers, base=x, words=words, layers=layers)


# ----------------------------------------------------------------------
# lattice verification


@dataclass
class LatticeReport:
    size: int
    pairs: int = 0
    missing_join: list[tuple[int, int]] = field(default_factory=list)
    missing_meet: list[tuple[int, int]] = field(default_factory=list)
    engine_mismatch: list[tuple[str, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.missing_join or self.missing_meet or self.engine_mismatch)

    def summary(self) -> str:
        status = "pass" if self.ok else "fail"
        return (
            f"{status}: {self.size} elements, {self.pairs} pairs, "
            f"{len(self.missing_join)} without join, {len(self.missing_meet)} without meet, "
            f"{len(self.engine_mismatch)} engine mismatches"
        )


def verify_lattice(poset: FinitePoset, compare_engine: bool = True) -> LatticeReport:
    """Check every pair for a least upper and greatest lower bound.

    For an :class:`IntervalLattice` the bounds are also compared with the
    engine's join and meet of the representative words.
    """
    report = LatticeReport(len(poset))
    engine = compare_engine and isinstance(poset, IntervalLattice)
    if engine:
        from .engine import join, meet
    n = len(poset)
    for i in range(n):
        for j in range(i, n):
            report.pairs += 1
            jn, mt = poset.join(i, j), poset.meet(i, j)
            if jn is None:
                report.missing_join.append((i, j))
            if mt is None:
                report.missing_meet.append((i, j))
            if engine:
                u, v = poset.words[i], poset.words[j]
                if jn is not None and poset.index_of(join(u, v)) != jn:
                    report.engine_mismatch.append(("join", i, j))
                if mt is not None and poset.index_of(meet(u, v)) != mt:
                    report.engine_mismatch.append(("meet", i, j))
    return report


# ----------------------------------------------------------------------
# Tamari orders


@dataclass
class TamariOrder(FinitePoset):
    """An order on all objects of an all-3 labelling, transported from an interval."""

    labelling: Labelling | None = None
    base: DiskObject | None = None
    objects: list[DiskObject] = field(default_factory=list)

    def element_label(self, i: int) -> str:
        return self.objects[i].key

    def leq_objects(self, y: DiskObject, z: DiskObject) -> bool:
        pos = {o: i for i, o in enumerate(self.objects)}
        return self.leq(pos[y], pos[z])


def tamari(lab: Labelling, base: DiskObject | None = None) -> TamariOrder:
    """Order the triangulations by the interval at ``base`` (default: the fan)."""
    if any(x != 3 for x in lab.labels):
        raise DiskError("Tamari orders need every label equal to 3")
    if base is None:
        base = fan(lab)
    if base.labels != lab.sorted_labels:
        raise DiskError("base object belongs to a different labelling")
    lat = interval(base)
    objects = lat.targets()
    everything = enumerate_objects(lab)
    if len(set(objects)) != len(objects) or set(objects) != set(everything):
        raise AssertionError("projection of the interval to objects is not a bijection")
    return TamariOrder(
        elements=[o.key for o in objects],
        covers=list(lat.covers),
        labelling=lab,
        base=base,
        objects=objects,
    )


def hasse_export(poset: FinitePoset, fmt: str = "dot", path: str | None = None) -> str:
    """Render as DOT or JSON; also write to ``path`` when given."""
    if fmt == "dot":
        text = poset.to_dot()
    elif fmt == "json":
        text = json.dumps(poset.to_json(), indent=2, sort_keys=True) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
