"""Word reversing and the Garside structure built on it.

Positive words are tuples of :class:`~diskgarside.presentation.Move`.  Every
function that needs the source object of a possibly empty word takes it
explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .disk import DiskError, DiskObject, shift
from .presentation import Move, Word, atoms, complement, is_composable, phi_word, word_target

DEFAULT_STEP_CAP = 100_000


class Divergence(RuntimeError):
    """Reversing did not terminate within the configured step cap."""


class GarsideError(AssertionError):
    """A postcondition of the Garside structure failed."""


_settings = {"step_cap": DEFAULT_STEP_CAP}


def set_step_cap(cap: int) -> None:
    if cap < 1:
        raise ValueError("step cap must be positive")
    _settings["step_cap"] = cap
    _reverse_cached.cache_clear()


def _check_source(word: Sequence[Move], source: DiskObject) -> None:
    if not is_composable(word, source):
        raise DiskError("word is not composable from the given source")


# ----------------------------------------------------------------------
# reversing


def reverse(u: Sequence[Move], v: Sequence[Move], source: DiskObject | None = None) -> tuple[Word, Word]:
    """Return ``(u\\v, v\\u)`` by right reversing ``u^-1 v``.

    ``source`` is only needed when both words are empty.
    """
    u, v = tuple(u), tuple(v)
    if u and v and u[0].source != v[0].source:
        raise DiskError("reverse needs words with the same source")
    if source is not None:
        _check_source(u, source)
        _check_source(v, source)
    return _reverse_cached(u, v)


@lru_cache(maxsize=200_000)
def _reverse_cached(u: Word, v: Word) -> tuple[Word, Word]:
    cap = _settings["step_cap"]
    letters: list[tuple[int, Move]] = [(-1, mv) for mv in reversed(u)] + [(1, mv) for mv in v]
    steps = 0
    i = 0
    while i < len(letters) - 1:
        (s1, a), (s2, b) = letters[i], letters[i + 1]
        if s1 < 0 < s2:
            steps += 1
            if steps > cap:
                raise Divergence(f"reversing exceeded {cap} steps")
            if a == b:
                letters[i:i + 2] = []
            else:
                tail_ab, tail_ba = complement(a, b)
                letters[i:i + 2] = [(1, mv) for mv in tail_ab] + [(-1, mv) for mv in reversed(tail_ba)]
            i = max(i - 1, 0)
        else:
            i += 1
    pos = tuple(mv for s, mv in letters if s > 0)
    neg = tuple(mv for s, mv in reversed(letters) if s < 0)
    return pos, neg


def reverse_randomized(u: Sequence[Move], v: Sequence[Move], rng) -> tuple[Word, Word]:
    """Reversing with a random choice of redex each step (for confluence tests)."""
    cap = _settings["step_cap"]
    letters = [(-1, mv) for mv in reversed(tuple(u))] + [(1, mv) for mv in v]
    for _ in range(cap):
        redexes = [i for i in range(len(letters) - 1) if letters[i][0] < 0 < letters[i + 1][0]]
        if not redexes:
            break
        i = rng.choice(redexes)
        a, b = letters[i][1], letters[i + 1][1]
        if a == b:
            letters[i:i + 2] = []
        else:
            tail_ab, tail_ba = complement(a, b)
            letters[i:i + 2] = [(1, mv) for mv in tail_ab] + [(-1, mv) for mv in reversed(tail_ba)]
    else:
        raise Divergence(f"reversing exceeded {cap} steps")
    return (tuple(mv for s, mv in letters if s > 0), tuple(mv for s, mv in reversed(letters) if s < 0))


def equal_positive(u: Sequence[Move], v: Sequence[Move]) -> bool:
    uv, vu = reverse(u, v)
    return not uv and not vu


def left_divides(u: Sequence[Move], v: Sequence[Move]) -> Word | None:
    """The quotient ``w`` with ``u w = v`` if ``u`` left-divides ``v``, else None."""
    uv, vu = reverse(u, v)
    return uv if not vu else None


def join(u: Sequence[Move], v: Sequence[Move]) -> Word:
    uv, _ = reverse(u, v)
    return tuple(u) + uv


def meet(u: Sequence[Move], v: Sequence[Move], order: Sequence[int] | None = None) -> Word:
    """Greatest common left divisor, grown one atom at a time.

    ``order`` optionally permutes the arc ids tried at each step; the result
    does not depend on it up to equivalence.
    """
    u, v = tuple(u), tuple(v)
    if not u or not v:
        return ()
    if u[0].source != v[0].source:
        raise DiskError("meet needs words with the same source")
    prefix: list[Move] = []
    cur = u[0].source
    while u and v:
        arcs = order if order is not None else range(cur.arc_count)
        for arc in arcs:
            if arc >= cur.arc_count:
                continue
            a = (Move(cur, arc),)
            qu = left_divides(a, u)
            if qu is None:
                continue
            qv = left_divides(a, v)
            if qv is None:
                continue
            prefix.append(a[0])
            u, v = qu, qv
            cur = a[0].target
            break
        else:
            break
    return tuple(prefix)


# ----------------------------------------------------------------------
# Garside element and automorphism


def phi_object(x: DiskObject, k: int = 1) -> DiskObject:
    return shift(x, k)


@lru_cache(maxsize=None)
def _delta_unchecked(x: DiskObject) -> Word:
    word: Word = ()
    for a in atoms(x):
        word = join(word, (a,))
    target = word_target(word, x)
    if target != shift(x, 1):
        raise GarsideError(f"join of atoms at {x.key} ends at {target.key}, not at the shifted object")
    for a in atoms(x):
        if left_divides((a,), word) is None:
            raise GarsideError(f"atom {a.arc} does not divide the join of atoms at {x.key}")
    return word


_verified: set[DiskObject] = set()


def delta(x: DiskObject, verify: bool = True) -> Word:
    """Garside element at ``x``: the join of all atoms.

    Checks that it ends at the shifted object, that every atom divides it,
    and (``verify=True``) that ``a . delta(target a) = delta(x) . phi(a)``
    for every atom ``a``.
    """
    word = _delta_unchecked(x)
    if verify and x not in _verified:
        for a in atoms(x):
            lhs = (a,) + _delta_unchecked(a.target)
            rhs = word + phi_word((a,))
            if not equal_positive(lhs, rhs):
                raise GarsideError(f"delta does not intertwine atom {a.arc} at {x.key}")
        _verified.add(x)
    return word


def delta_power(x: DiskObject, k: int) -> Word:
    """``Delta_x Delta_{phi x} ... `` with ``k`` factors."""
    out: list[Move] = []
    cur = x
    for _ in range(k):
        out.extend(delta(cur, verify=False))
        cur = shift(cur, 1)
    return tuple(out)


def garside_report(x: DiskObject) -> list[str]:
    """Human-readable list of failed Garside checks at ``x`` (empty when fine)."""
    problems = []
    try:
        word = _delta_unchecked(x)
    except GarsideError as exc:
        return [str(exc)]
    for a in atoms(x):
        if left_divides((a,), word) is None:
            problems.append(f"atom {a.arc} does not divide delta")
        lhs = (a,) + _delta_unchecked(a.target)
        if not equal_positive(lhs, word + phi_word((a,))):
            problems.append(f"atom {a.arc}: a.delta != delta.phi(a)")
    return problems


def is_simple(word: Sequence[Move], source: DiskObject) -> bool:
    return left_divides(word, delta(source, verify=False)) is not None


# ----------------------------------------------------------------------
# normal forms


def canonical_word(word: Sequence[Move], source: DiskObject) -> Word:
    """Lexicographically least representative (by arc ids) of the class of ``word``."""
    rest = tuple(word)
    out: list[Move] = []
    cur = source
    while rest:
        for a in atoms(cur):
            q = left_divides((a,), rest)
            if q is not None:
                out.append(a)
                rest = q
                cur = a.target
                break
        else:  # pragma: no cover - a nonempty word always has a first atom
            raise AssertionError("nonempty word without an atom divisor")
    return tuple(out)


def greedy_normal_form(word: Sequence[Move], source: DiskObject) -> list[Word]:
    """Left-greedy factorization into simple elements (canonical words)."""
    rest = tuple(word)
    factors = []
    cur = source
    while rest:
        head = meet(rest, delta(cur))
        if not head:  # pragma: no cover - an atom always divides both
            raise AssertionError("empty head for a nonempty word")
        head = canonical_word(head, cur)
        rest = left_divides(head, rest)
        factors.append(head)
        cur = head[-1].target
    return factors


# ----------------------------------------------------------------------
# fractions


@dataclass(frozen=True)
class GroupoidElement:
    """The morphism ``denominator^-1 . numerator`` of the groupoid.

    Both words start at ``apex``; the element goes from the end of the
    denominator to the end of the numerator.
    """

    apex: DiskObject
    denominator: Word
    numerator: Word

    def __post_init__(self):
        _check_source(self.denominator, self.apex)
        _check_source(self.numerator, self.apex)

    @classmethod
    def positive(cls, source: DiskObject, word: Sequence[Move]) -> "GroupoidElement":
        return cls(source, (), tuple(word))

    @property
    def source(self) -> DiskObject:
        return word_target(self.denominator, self.apex)

    @property
    def target(self) -> DiskObject:
        return word_target(self.numerator, self.apex)

    def simplify(self) -> "GroupoidElement":
        common = meet(self.denominator, self.numerator)
        if not common:
            return self
        d = left_divides(common, self.denominator)
        n = left_divides(common, self.numerator)
        return GroupoidElement(word_target(common, self.apex), d, n)

    def inverse(self) -> "GroupoidElement":
        return GroupoidElement(self.apex, self.numerator, self.denominator)

    def __mul__(self, other: "GroupoidElement") -> "GroupoidElement":
        return multiply(self, other)

    def is_identity(self) -> bool:
        return self.source == self.target and equal_positive(self.denominator, self.numerator)

    def equals(self, other: "GroupoidElement") -> bool:
        if self.source != other.source or self.target != other.target:
            return False
        return (self * other.inverse()).is_identity()


def multiply(g: GroupoidElement, h: GroupoidElement) -> GroupoidElement:
    """Product ``g h`` (first ``g`` then ``h``), returned reduced.

    Writes ``d2^-1 = c Delta^-k`` with ``d2 c = Delta^k`` and moves the
    inverse power of Delta to the left through the Garside automorphism.
    """
    if g.target != h.source:
        raise DiskError("elements are not composable")
    d1, n1, d2, n2 = g.denominator, g.numerator, h.denominator, h.numerator
    z1 = g.apex
    z = h.apex
    k = len(greedy_normal_form(d2, z))
    power = delta_power(z, k)
    c = left_divides(d2, power)
    if c is None:  # pragma: no cover - d2 divides Delta^k by construction
        raise GarsideError("denominator does not divide its Delta power")
    start = shift(z1, -k)
    new_den = delta_power(start, k) + d1
    new_num = phi_word(n1 + c, -k) + n2
    return GroupoidElement(start, new_den, new_num).simplify()


def element_from_signed(source: DiskObject, letters: Sequence[tuple[int, int]]) -> GroupoidElement:
    """Build an element from ``(sign, arc)`` letters read left to right.

    A positive letter rotates ``arc`` of the current object forwards; a
    negative one rotates it backwards (the inverse of the move ending there).
    """
    from .disk import unrotate_arc

    g = GroupoidElement(source, (), ())
    cur = source
    for sign, arc in letters:
        cur.check_arc(arc)
        if sign > 0:
            mv = Move(cur, arc)
            g = g * GroupoidElement.positive(cur, (mv,))
            cur = mv.target
        else:
            back = unrotate_arc(cur, arc)
            prev = back.target
            mv = Move(prev, back.correspondence[arc])
            g = g * GroupoidElement.positive(prev, (mv,)).inverse()
            cur = prev
    return g


# ----------------------------------------------------------------------
# cube condition


@dataclass
class CubeReport:
    obj: DiskObject
    checked: int = 0
    failures: list[tuple[int, int, int]] = None
    inconclusive: list[tuple[int, int, int]] = None

    def __post_init__(self):
        self.failures = self.failures or []
        self.inconclusive = self.inconclusive or []

    @property
    def ok(self) -> bool:
        return not self.failures and not self.inconclusive


def cube_check(x: DiskObject, oracle_caps=None) -> CubeReport:
    """Check ``(a\\b)\\(a\\c) = (b\\a)\\(b\\c)`` for every ordered triple of distinct atoms.

    Equivalence is decided by the bounded congruence closure in
    :mod:`diskgarside.oracle`, not by reversing.
    """
    from .oracle import Caps, oracle_equal

    caps = oracle_caps or Caps()
    report = CubeReport(x)
    n = x.arc_count
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if len({a, b, c}) < 3:
                    continue
                report.checked += 1
                status = _cube_triple(x, a, b, c, caps, oracle_equal)
                if status == "no":
                    report.failures.append((a, b, c))
                elif status != "yes":
                    report.inconclusive.append((a, b, c))
    return report


def cube_triple(x: DiskObject, a: int, b: int, c: int, caps=None) -> str:
    from .oracle import Caps, oracle_equal

    if len({a, b, c}) < 3:
        raise DiskError("cube check needs three distinct atoms")
    return _cube_triple(x, a, b, c, caps or Caps(), oracle_equal)


def _cube_triple(x, a, b, c, caps, oracle_equal) -> str:
    ma, mb, mc = Move(x, a), Move(x, b), Move(x, c)
    try:
        lhs = _word_under((ma,), (mb,), (mc,))
        rhs = _word_under((mb,), (ma,), (mc,))
    except Divergence:
        return "inconclusive"
    return oracle_equal(lhs, rhs, caps)


def _under(u: Word, v: Word) -> Word:
    return reverse(u, v)[0]


def _word_under(a: Word, b: Word, c: Word) -> Word:
    return _under(_under(a, b), _under(a, c))
