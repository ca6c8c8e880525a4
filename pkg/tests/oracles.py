"""Slow, obviously-correct reference implementations used only by tests.

Everything here works on fractions.Fraction and explicit one-step tree walks,
sharing no code with the library beyond the value type conversions.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import groupby

from sblearn.rational import ExtendedRational


def F(q: ExtendedRational) -> Fraction:
    return Fraction(q.num, q.den)


def E(f: Fraction) -> ExtendedRational:
    return ExtendedRational(f.numerator, f.denominator)


def path_walk(q: Fraction, limit: int = 100_000):
    """L/R string from 0/1 to q, with every visited (lbound, node, rbound),
    bounds as (num, den) pairs."""
    ln, ld, rn, rd = -1, 0, 1, 0
    vn, vd = 0, 1
    path = []
    visited = [((ln, ld), (vn, vd), (rn, rd))]
    while Fraction(vn, vd) != q:
        if len(path) > limit:
            raise RuntimeError("path too long")
        if q < Fraction(vn, vd):
            path.append("L")
            rn, rd = vn, vd
            vn, vd = (ln + vn, ld + vd) if ld else (vn - 1, vd)
        else:
            path.append("R")
            ln, ld = vn, vd
            vn, vd = (vn + rn, vd + rd) if rd else (vn + 1, vd)
        visited.append(((ln, ld), (vn, vd), (rn, rd)))
    return "".join(path), visited


def encoding_from_path(path: str):
    if not path:
        return 0, ()
    sign = 1 if path[0] == "R" else -1
    return sign, tuple(len(list(g)) for _, g in groupby(path))


def turning_points(q: Fraction) -> list[Fraction]:
    """Nodes on the path after which the direction changes, plus q itself."""
    path, visited = path_walk(q)
    out = []
    for i in range(1, len(path)):
        if path[i] != path[i - 1]:
            out.append(Fraction(*visited[i][1]))
    if path:
        out.append(q)
    return out


def ancestors(q: Fraction) -> list[Fraction]:
    _, visited = path_walk(q)
    return [Fraction(*v) for _, v, _ in visited[:-1]]


def bfs_simplest(contains, max_depth: int = 12):
    """Shallowest tree node satisfying ``contains``, by level-order search."""
    level = [((-1, 0), (0, 1), (1, 0))]
    for _ in range(max_depth + 1):
        nxt = []
        for L, v, R in level:
            if contains(Fraction(*v)):
                return Fraction(*v)
        for L, v, R in level:
            left = (L[0] + v[0], L[1] + v[1]) if L[1] else (v[0] - 1, v[1])
            right = (v[0] + R[0], v[1] + R[1]) if R[1] else (v[0] + 1, v[1])
            nxt.append((L, left, v))
            nxt.append((v, right, R))
        level = nxt
    return None


def tree_nodes(max_depth: int):
    """(parent, child) value pairs for all edges with child depth <= max_depth."""
    level = [((-1, 0), (0, 1), (1, 0))]
    edges = []
    for _ in range(max_depth):
        nxt = []
        for L, v, R in level:
            left = (L[0] + v[0], L[1] + v[1]) if L[1] else (v[0] - 1, v[1])
            right = (v[0] + R[0], v[1] + R[1]) if R[1] else (v[0] + 1, v[1])
            for c, node in ((left, (L, left, v)), (right, (v, right, R))):
                edges.append((Fraction(*v), Fraction(*c)))
                nxt.append(node)
        level = nxt
    return edges


def eval_pieces(pieces, q: Fraction):
    """Label of q under a list of (lo, hi, lo_closed, hi_closed, label) with
    Fraction or None (infinite) endpoints, by linear scan."""
    hits = []
    for lo, hi, lc, hc, label in pieces:
        above_lo = lo is None or q > lo or (lc and q == lo)
        below_hi = hi is None or q < hi or (hc and q == hi)
        if above_lo and below_hi:
            hits.append(label)
    if len(hits) != 1:
        raise AssertionError(f"{q} lies in {len(hits)} pieces")
    return hits[0]


def to_pieces(r):
    out = []
    for iv, label in r.pieces:
        lo = F(iv.lo) if iv.lo.is_finite else None
        hi = F(iv.hi) if iv.hi.is_finite else None
        out.append((lo, hi, iv.lo_closed, iv.hi_closed, label))
    return out


def probes(r, extra=()):
    """Endpoints, midpoints between consecutive endpoints and points outside."""
    pts = sorted({F(iv.lo) for iv, _ in r.pieces[1:]} | {F(x) for x in extra})
    out = list(pts)
    for a, b in zip(pts, pts[1:]):
        out.append((a + b) / 2)
    if pts:
        out += [pts[0] - 1, pts[-1] + 1]
    else:
        out += [Fraction(0), Fraction(-7, 3), Fraction(5)]
    return out


def monochromatic_closed(pieces, a: Fraction, b: Fraction) -> bool:
    """Is the label constant on [a, b]?  Checks a, b, every endpoint strictly
    inside and a point between consecutive critical points."""
    crit = sorted({a, b} | {x for lo, hi, *_ in pieces for x in (lo, hi) if x is not None and a < x < b})
    pts = list(crit) + [(x + y) / 2 for x, y in zip(crit, crit[1:])]
    return len({eval_pieces(pieces, p) for p in pts}) == 1


def minterm_letters(*automata):
    """Every guard endpoint, a point strictly between consecutive endpoints,
    and a point beyond each end: one member of every cell of the common refinement."""
    ends = {x for A in automata for g in A.guards.values() for iv, _ in g for x in (iv.lo, iv.hi)}
    pts = sorted(F(x) for x in ends if x.is_finite)
    if not pts:
        return [E(Fraction(0))]
    out = pts + [(a + b) / 2 for a, b in zip(pts, pts[1:])] + [pts[0] - 1, pts[-1] + 1]
    return [E(x) for x in out]


def brute_shortest_accepted(A, letters):
    """Length of a shortest accepted word over ``letters``, by breadth-first search."""
    dist = {A.initial: 0}
    queue = deque([A.initial])
    while queue:
        s = queue.popleft()
        if s in A.finals:
            return dist[s]
        for q in letters:
            t = A.step(s, q)
            if t not in dist:
                dist[t] = dist[s] + 1
                queue.append(t)
    return None
