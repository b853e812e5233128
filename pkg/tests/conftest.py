from __future__ import annotations

import random

import pytest

from diskgarside.disk import DiskObject, enumerate_objects, validate
from diskgarside.presentation import Move, relations

# Initial objects of the eight rank-3 characteristic-graph fixtures, with the
# expected node counts.  Fat boundary segments are given their shortest
# admissible length; other lengths are exercised in test_presentation.
CHARGRAPH_FIXTURES = {
    "a": ([2, 2, 2, 4], [(0, 1), (1, 2), (2, 3)], 12),
    "b": ([3, 3, 3, 3], [(0, 2), (2, 4), (0, 4)], 14),
    "c": ([3, 3, 3, 3], [(0, 2), (0, 3), (0, 4)], 14),
    "d": ([3, 3, 3, 3], [(0, 2), (0, 3), (3, 5)], 14),
    "e": ([3, 3, 3, 3], [(1, 3), (0, 3), (0, 4)], 14),
    "f": ([2, 2, 2, 3], [(1, 2), (1, 2), (0, 2)], 18),
    "g": ([2, 2, 2, 3], [(1, 2), (1, 2), (0, 1)], 18),
    "h": ([2, 2, 2, 2], [(0, 1), (0, 1), (0, 1)], 24),
}

# The decomposition of a 9-gon with labels 3,3,4,5 and arcs v3-v5, v7-v0,
# v0-v3; rotating v0-v3 gives v1-v5.
NINE_GON = ([3, 3, 4, 5], [(3, 5), (7, 0), (0, 3)])


def objects_of(labels):
    return enumerate_objects(validate(labels))


def random_word(x: DiskObject, length: int, rng: random.Random) -> tuple:
    word = []
    cur = x
    for _ in range(length):
        if cur.arc_count == 0:
            break
        mv = Move(cur, rng.randrange(cur.arc_count))
        word.append(mv)
        cur = mv.target
    return tuple(word)


def random_rewrite(word: tuple, steps: int, rng: random.Random) -> tuple:
    """Apply random elementary relations (either direction) to ``word``."""
    for _ in range(steps):
        options = []
        for i, mv in enumerate(word):
            for rel in relations(mv.source):
                for lhs, rhs in ((rel.left, rel.right), (rel.right, rel.left)):
                    if word[i:i + len(lhs)] == lhs:
                        options.append(word[:i] + rhs + word[i + len(lhs):])
        if not options:
            break
        word = rng.choice(options)
    return word


@pytest.fixture
def rng():
    return random.Random(20240611)


# ----------------------------------------------------------------------
# acceptance summary lines

ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
