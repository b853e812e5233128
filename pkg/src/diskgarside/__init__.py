"""Labelled-disk Garside groupoid: disk decompositions, elementary moves,
word reversing, Garside normal forms and the lattices of simple elements."""

from __future__ import annotations

from .disk import (
    DiskError,
    DiskObject,
    Labelling,
    canonical_key,
    diagonal_move,
    enumerate_objects,
    fan,
    faces,
    parse_key,
    rotate_arc,
    shift,
    validate,
)
from .engine import (
    Divergence,
    GroupoidElement,
    cube_check,
    delta,
    equal_positive,
    greedy_normal_form,
    join,
    left_divides,
    meet,
    reverse,
)
from .lattice import FinitePoset, IntervalLattice, TamariOrder, hasse_export, interval, tamari, verify_lattice
from .oracle import Caps, classical_tamari, oracle_equal, weak_order
from .presentation import (
    CharGraph,
    ElementaryRelation,
    Move,
    atoms,
    characteristic_graph,
    complement,
    phi_move,
    relation,
    weight,
    word_from_arcs,
)

__version__ = "0.1.0"
