from __future__ import annotations

import itertools
import json
from math import comb

import pytest

from conftest import NINE_GON, objects_of
from diskgarside.disk import (
    DiskError,
    DiskObject,
    ObjectCapExceeded,
    canonical_key,
    diagonal_move,
    enumerate_objects,
    fan,
    from_json,
    loads,
    parse_key,
    rotate_arc,
    shift,
    shift_with_correspondence,
    unrotate_arc,
    validate,
)


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def _crosses(c, d) -> bool:
    (a, b), (p, q) = c, d
    return a < p < b < q or p < a < q < b


def brute_triangulations(k: int) -> set[tuple]:
    """Maximal non-crossing diagonal sets of a (k+2)-gon, by exhaustive search."""
    m = k + 2
    diagonals = [(i, j) for i in range(m) for j in range(i + 2, m) if not (i == 0 and j == m - 1)]
    out = set()
    for subset in itertools.combinations(diagonals, k - 1):
        if all(not _crosses(c, d) for c, d in itertools.combinations(subset, 2)):
            out.add(tuple(sorted(subset)))
    return out


def brute_objects(labels) -> set[str]:
    """Every multiset of chords that passes the object validity check."""
    lab = validate(labels)
    m = lab.m
    chords = [(i, j) for i in range(m) for j in range(i + 1, m)]
    found = set()
    for combo in itertools.combinations_with_replacement(chords, lab.n - 1):
        try:
            found.add(DiskObject.from_chords(labels, combo).key)
        except DiskError:
            continue
    return found


# ----------------------------------------------------------------------
# validate


def test_validate_examples():
    assert validate([3, 3]).m == 4
    assert validate([2, 2]).m == 2
    assert validate([3, 4, 5]).m == 8


@pytest.mark.parametrize("bad", [[], [1, 3], [3, 0], [2.5]])
def test_validate_rejects(bad):
    with pytest.raises(DiskError):
        validate(bad)


# ----------------------------------------------------------------------
# enumeration


def test_enumerate_small_counts():
    assert len(objects_of([3, 3])) == 2
    assert len(objects_of([2, 2])) == 1
    assert len(objects_of([3, 3, 3])) == 5


@pytest.mark.parametrize("k", range(1, 7))
def test_all_three_counts_are_catalan_and_match_brute_force(k):
    objs = objects_of([3] * k)
    assert len(objs) == catalan(k)
    if k >= 2:
        assert {o.chords for o in objs} == brute_triangulations(k)


@pytest.mark.parametrize("labels", [[2, 3], [3, 4], [2, 2, 3], [2, 4], [2, 3, 3], [3, 4, 3], [2, 2, 2, 3], [3, 3, 4, 5]])
def test_enumeration_matches_brute_force_chord_search(labels):
    assert [o.key for o in objects_of(labels)] == sorted(brute_objects(labels))


def test_enumeration_is_sorted_and_unique():
    keys = [o.key for o in objects_of([2, 3, 3, 4])]
    assert keys == sorted(set(keys))


def test_enumeration_cap():
    with pytest.raises(ObjectCapExceeded):
        enumerate_objects(validate([3] * 6), cap=10)


def test_single_puncture_has_one_object_without_arcs():
    (x,) = objects_of([5])
    assert x.arc_count == 0
    assert [f.size for f in x.faces] == [5]


# ----------------------------------------------------------------------
# faces


def test_faces_square():
    for x in objects_of([3, 3]):
        assert sorted(f.size for f in x.faces) == [3, 3]


def test_faces_bigon_disk():
    (x,) = objects_of([2, 2])
    assert sorted(f.size for f in x.faces) == [2, 2]


def test_faces_nine_gon():
    x = DiskObject.from_chords(*NINE_GON)
    assert sorted(f.size for f in x.faces) == [3, 3, 4, 5]
    assert x.arc_count == 3


def test_invalid_objects_rejected():
    with pytest.raises(DiskError):
        DiskObject.from_chords([3, 3, 3], [(0, 2), (1, 3)])  # crossing
    with pytest.raises(DiskError):
        DiskObject.from_chords([3, 3], [(0, 1)])  # faces 2 and 4
    with pytest.raises(DiskError):
        DiskObject.from_chords([3, 3], [(1, 1)])


# ----------------------------------------------------------------------
# moves


def test_square_rotation_and_shift():
    x0, x1 = sorted(objects_of([3, 3]), key=lambda o: o.chords, reverse=True)
    assert x0.chords == ((1, 3),)
    assert rotate_arc(x0, 0).target == x1
    assert shift(x0, 1) == x1
    assert shift(x0, 2) == x0


def test_nine_gon_rotation():
    x = DiskObject.from_chords(*NINE_GON)
    arc = x.chords.index((0, 3))
    res = rotate_arc(x, arc)
    assert res.target.chords[res.correspondence[arc]] == (1, 5)
    assert set(res.target.chords) == {(0, 7), (1, 5), (3, 5)}


def test_bigon_disk_rotation_is_trivial_on_objects():
    (x,) = objects_of([2, 2])
    assert rotate_arc(x, 0).target == x


def test_invalid_arc_id():
    x = fan(validate([3, 3, 3]))
    with pytest.raises(DiskError):
        rotate_arc(x, 2)
    with pytest.raises(DiskError):
        diagonal_move(x, [0, 0])
    with pytest.raises(DiskError):
        diagonal_move(x, [])


@pytest.mark.parametrize("labels", [[3, 3, 3, 3], [2, 2, 2, 2], [2, 3, 3], [3, 4, 3], [2, 2, 4], [2, 5, 3]])
def test_move_invariants(labels):
    lab = validate(labels)
    universe = set(objects_of(labels))
    for x in universe:
        assert shift(x, lab.m) == x
        if x.arc_count:
            assert diagonal_move(x, range(x.arc_count)) == shift(x, 1)
        for a in range(x.arc_count):
            res = rotate_arc(x, a)
            assert res.target in universe
            assert sorted(f.size for f in res.target.faces) == list(x.labels)
            assert sorted(res.correspondence.values()) == list(range(x.arc_count))
            assert diagonal_move(x, [a]) == res.target
            back = unrotate_arc(res.target, res.correspondence[a])
            assert back.target == x
            assert back.correspondence[res.correspondence[a]] == a


def test_fan_diagonal_equals_shift():
    x = fan(validate([3, 3, 3]))
    assert x.chords == ((0, 2), (0, 3))
    assert diagonal_move(x, {0, 1}) == shift(x, 1)


def test_shift_is_bijection():
    objs = objects_of([2, 3, 4])
    assert {shift(x, 1) for x in objs} == set(objs)
    for x in objs:
        assert shift(shift(x, 3), -3) == x


def test_shift_correspondence_on_parallel_arcs():
    (x,) = objects_of([2, 2, 2])
    _, corr = shift_with_correspondence(x, 1)
    assert corr == {0: 1, 1: 0}


# ----------------------------------------------------------------------
# fans


def test_fans():
    assert fan(validate([2, 2, 2])) == objects_of([2, 2, 2])[0]
    a = fan(validate([3, 4]), 0, [0, 1])
    b = fan(validate([3, 4]), 0, [1, 0])
    assert a.key != b.key
    with pytest.raises(DiskError):
        fan(validate([3, 4]), 0, [0, 0])


# ----------------------------------------------------------------------
# serialization


def test_key_round_trip_everywhere():
    for labels in ([3, 3, 3, 3], [2, 2, 2, 2], [2, 3, 4]):
        for x in objects_of(labels):
            assert canonical_key(parse_key(canonical_key(x))) == x.key
            assert from_json(json.loads(json.dumps(x.to_json()))) == x
            assert loads(json.dumps(x.to_json())) == x


def test_rotation_is_canonical_first_occurrence_order():
    for x in objects_of([2, 2, 3, 3]):
        seen = []
        for lst in x.rotation:
            for a in lst:
                if a not in seen:
                    seen.append(a)
        assert seen == list(range(x.arc_count))


@pytest.mark.parametrize("key", ["", "v1:", "v0:3,3|0;;0;", "v1:3,3|1;;1;", "v1:3,3|0;0;;", "v1:3,x|0;;0;"])
def test_bad_keys(key):
    with pytest.raises(DiskError):
        parse_key(key)


def test_json_rotation_mismatch_rejected():
    data = fan(validate([3, 3, 3])).to_json()
    data["rotation"]["0"] = [1, 0]
    with pytest.raises(DiskError):
        from_json(data)
