"""Stern-Brocot tree over all of Q.

The root is 0/1 with boundary pair (-1/0, 1/0); every node is the mediant of
its two bounds.  Paths are handled through their run-length encoding, so the
cost of any navigation is linear in the number of direction changes rather
than in the tree depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .rational import INF, NEG_INF, ZERO, ExtendedRational


class UndefinedMediant(ValueError):
    pass


class MalformedEncoding(ValueError):
    pass


class NoParent(ValueError):
    pass


class Direction(Enum):
    LEFT = "left"
    RIGHT = "right"

    def flip(self) -> Direction:
        return Direction.RIGHT if self is Direction.LEFT else Direction.LEFT


LEFT = Direction.LEFT
RIGHT = Direction.RIGHT


@dataclass(frozen=True, slots=True)
class SBNode:
    value: ExtendedRational
    lbound: ExtendedRational
    rbound: ExtendedRational

    def contains(self, q: ExtendedRational) -> bool:
        """True iff q lies in the subtree rooted here (the node included)."""
        return self.lbound < q < self.rbound

    def bound(self, direction: Direction) -> ExtendedRational:
        return self.lbound if direction is LEFT else self.rbound


ROOT = SBNode(ZERO, NEG_INF, INF)


@dataclass(frozen=True, slots=True)
class SBEncoding:
    sign: int  # -1, 0 or +1
    runs: tuple[int, ...]

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise MalformedEncoding(f"bad sign {self.sign!r}")
        if (self.sign == 0) != (len(self.runs) == 0):
            raise MalformedEncoding("sign is zero iff the run array is empty")
        for a in self.runs:
            if a < 1:
                raise MalformedEncoding(f"run {a} < 1")

    @property
    def depth(self) -> int:
        return sum(self.runs)

    def __str__(self) -> str:
        if self.sign == 0:
            return "[]"
        return ("+" if self.sign > 0 else "-") + "[" + ",".join(map(str, self.runs)) + "]"


def mediant(p: ExtendedRational, q: ExtendedRational, strict: bool = False) -> ExtendedRational:
    """(p.num + q.num) / (p.den + q.den).

    The root pair (-inf, inf) gives 0/1.  With ``strict`` the arguments must
    be a Stern-Brocot boundary pair: p < q and q.num*p.den - p.num*q.den == 1.
    """
    if p.den == 0 and q.den == 0 and p.num == -q.num:
        if p.num < 0:
            return ZERO
        raise UndefinedMediant("the mediant of inf and -inf is 0/0")
    if strict and (not p < q or q.num * p.den - p.num * q.den != 1):
        raise UndefinedMediant(f"({p}, {q}) is not a boundary pair")
    return ExtendedRational(p.num + q.num, p.den + q.den)


def _pair_mediant(p: ExtendedRational, q: ExtendedRational) -> ExtendedRational:
    # Mediants of boundary pairs are irreducible by construction.
    if p.den == 0 and q.den == 0:
        return ZERO
    return ExtendedRational._raw(p.num + q.num, p.den + q.den)


def left_child(n: SBNode) -> SBNode:
    return SBNode(_pair_mediant(n.lbound, n.value), n.lbound, n.value)


def right_child(n: SBNode) -> SBNode:
    return SBNode(_pair_mediant(n.value, n.rbound), n.value, n.rbound)


def child(n: SBNode, direction: Direction) -> SBNode:
    return left_child(n) if direction is LEFT else right_child(n)


def _cf_terms(n: int, d: int) -> list[int]:
    terms = []
    while d:
        t, r = divmod(n, d)
        terms.append(t)
        n, d = d, r
    return terms


def sb_encode(q: ExtendedRational) -> SBEncoding:
    if not q.is_finite:
        raise ValueError("infinite values have no Stern-Brocot encoding")
    if q.num == 0:
        return SBEncoding(0, ())
    c = _cf_terms(abs(q.num), q.den)
    if len(c) == 1:
        runs = (c[0],)
    else:
        # |q| = [c0; c1, ..., ck] with ck >= 2; the path from 0/1 starts with
        # one extra R (the step to 1/1) and ends one short of ck.
        runs = (c[0] + 1, *c[1:-1], c[-1] - 1)
    return SBEncoding(q.sign, runs)


def _walk(sign: int, runs) -> Iterator[tuple[int, int, int, int, int, int]]:
    """Yield (ln, ld, vn, vd, rn, rd) after each run of moves."""
    ln, ld, vn, vd, rn, rd = -1, 0, 0, 1, 1, 0
    going_right = sign > 0
    for a in runs:
        if going_right:
            ln, ld = vn + (a - 1) * rn, vd + (a - 1) * rd
            vn, vd = vn + a * rn, vd + a * rd
        else:
            rn, rd = vn + (a - 1) * ln, vd + (a - 1) * ld
            vn, vd = vn + a * ln, vd + a * ld
        going_right = not going_right
        yield ln, ld, vn, vd, rn, rd


def _node_from_encoding(e: SBEncoding) -> SBNode:
    state = None
    for state in _walk(e.sign, e.runs):
        pass
    if state is None:
        return ROOT
    ln, ld, vn, vd, rn, rd = state
    R = ExtendedRational._raw
    return SBNode(R(vn, vd), R(ln, ld), R(rn, rd))


def sb_decode(e: SBEncoding) -> ExtendedRational:
    if not isinstance(e, SBEncoding):
        e = SBEncoding(*e)
    return _node_from_encoding(e).value


def node_of(q: ExtendedRational) -> SBNode:
    if not q.is_finite:
        raise ValueError("infinite values are not tree nodes")
    return _node_from_encoding(sb_encode(q))


def depth(q: ExtendedRational) -> int:
    return sb_encode(q).depth


def parent(q: ExtendedRational) -> ExtendedRational:
    """The node whose left or right child is q: the deeper of q's bounds."""
    if q.num == 0:
        raise NoParent("0/1 is the root")
    return parent_of_node(node_of(q))


def parent_of_node(n: SBNode) -> ExtendedRational:
    lb, rb = n.lbound, n.rbound
    if n.value.num == 0 and n.value.den == 1:
        raise NoParent("0/1 is the root")
    if not lb.is_finite:
        return rb
    if not rb.is_finite:
        return lb
    # the deeper bound is the one built as a mediant involving the other
    return lb if abs(lb.num) + lb.den > abs(rb.num) + rb.den else rb


def convergents(q: ExtendedRational) -> list[ExtendedRational]:
    e = sb_encode(q)
    R = ExtendedRational._raw
    return [R(vn, vd) for _, _, vn, vd, _, _ in _walk(e.sign, e.runs)]


def is_ancestor(p: ExtendedRational, q: ExtendedRational) -> bool:
    """Strict ancestry: p lies on the root-to-q path and p != q."""
    if p == q:
        return False
    return node_of(p).contains(q)


def is_ancestor_by_encoding(p: ExtendedRational, q: ExtendedRational) -> bool:
    """Same relation decided by the run-prefix rule on the two encodings."""
    if p == q:
        return False
    ep, eq = sb_encode(p), sb_encode(q)
    if ep.sign == 0:
        return True
    if ep.sign != eq.sign:
        return False
    k, n = len(ep.runs), len(eq.runs)
    if k > n or ep.runs[: k - 1] != eq.runs[: k - 1]:
        return False
    if k < n:
        return ep.runs[-1] <= eq.runs[k - 1]
    return ep.runs[-1] < eq.runs[-1]


def branch_offset_node(r: SBNode, direction: Direction, m: int) -> ExtendedRational:
    """The node m steps down the straight branch leaving r in ``direction``."""
    if m < 1:
        raise ValueError("offset must be positive")
    c = r.bound(direction)
    v = r.value
    return ExtendedRational._raw(v.num + m * c.num, v.den + m * c.den)


def branch_node(r: SBNode, direction: Direction, m: int) -> SBNode:
    """Like branch_offset_node, but with the node's own boundary pair."""
    c = r.bound(direction)
    v = r.value
    R = ExtendedRational._raw
    value = R(v.num + m * c.num, v.den + m * c.den)
    prev = R(v.num + (m - 1) * c.num, v.den + (m - 1) * c.den)
    if direction is LEFT:
        return SBNode(value, c, prev)
    return SBNode(value, prev, c)


def alternating_descent(n: SBNode, steps: int, first: Direction = LEFT) -> SBNode:
    """Node reached from n by ``steps`` moves alternating first, flip(first), ...

    Pairs of moves are a fixed linear map on the boundary pair, applied by
    repeated squaring.
    """
    if steps > 0 and n.lbound.den == 0 and n.rbound.den == 0:
        # the root is not the vector sum of its (infinite) bounds
        n, steps, first = child(n, first), steps - 1, first.flip()
    if steps == 0:
        return n
    L = (n.lbound.num, n.lbound.den)
    R = (n.rbound.num, n.rbound.den)
    pairs, odd = divmod(steps, 2)
    # one LEFT-then-RIGHT pair sends (L, R) to (2L+R, L+R); RIGHT-then-LEFT
    # sends it to (L+R, L+2R).
    if first is LEFT:
        m = ((2, 1), (1, 1))
    else:
        m = ((1, 1), (1, 2))
    a, b, c, d = _mat_pow(m, pairs)
    L, R = (
        (a * L[0] + b * R[0], a * L[1] + b * R[1]),
        (c * L[0] + d * R[0], c * L[1] + d * R[1]),
    )
    if odd:
        V = (L[0] + R[0], L[1] + R[1])
        if first is LEFT:
            R = V
        else:
            L = V
    X = ExtendedRational._raw
    if L[1] == 0 and R[1] == 0:
        return ROOT
    return SBNode(X(L[0] + R[0], L[1] + R[1]), X(*L), X(*R))


def _mat_pow(m, e: int) -> tuple[int, int, int, int]:
    ra, rb, rc, rd = 1, 0, 0, 1
    (a, b), (c, d) = m
    while e:
        if e & 1:
            ra, rb, rc, rd = ra * a + rb * c, ra * b + rb * d, rc * a + rd * c, rc * b + rd * d
        a, b, c, d = a * a + b * c, a * b + b * d, c * a + d * c, c * b + d * d
        e >>= 1
    return ra, rb, rc, rd
