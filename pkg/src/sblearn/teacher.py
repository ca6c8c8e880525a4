"""Membership/equivalence oracles, a simulated teacher over a known target,
counterexample strategies and brute-force break-link oracles."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .pwf import (
    Interval,
    Label,
    PiecewiseRepresentation,
    bound_values,
    disagreement_cells,
    evaluate,
    gallop,
    is_monochromatic,
    simplest_node_in,
)
from .rational import ExtendedRational
from .sternbrocot import (
    LEFT,
    RIGHT,
    ROOT,
    SBNode,
    alternating_descent,
    child,
    convergents,
    depth,
    left_child,
    node_of,
    parent_of_node,
    right_child,
)


class TeacherInconsistency(RuntimeError):
    """An oracle answer contradicts an earlier one or the hypothesis."""


class Transcript(list):
    """Log of oracle calls as dicts {kind, input, output}."""

    def record(self, kind: str, inp, out) -> None:
        self.append({"kind": kind, "input": inp, "output": out})


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return " ".join(map(str, x))
    return str(x)


class MembershipOracle:
    def __init__(self, fn: Callable[[ExtendedRational], Label], transcript: Optional[Transcript] = None):
        self._fn = fn
        self.count = 0
        self.transcript = transcript

    def __call__(self, q: ExtendedRational) -> Label:
        self.count += 1
        label = self._fn(q)
        if self.transcript is not None:
            self.transcript.record("mq", _fmt(q), _fmt(label))
        return label


class EquivalenceOracle:
    """Returns None when the hypothesis is correct, else a counterexample."""

    def __init__(
        self,
        fn: Callable[[PiecewiseRepresentation], Optional[ExtendedRational]],
        transcript: Optional[Transcript] = None,
    ):
        self._fn = fn
        self.count = 0
        self.transcript = transcript

    def __call__(self, hypothesis: PiecewiseRepresentation) -> Optional[ExtendedRational]:
        self.count += 1
        cex = self._fn(hypothesis)
        if self.transcript is not None:
            self.transcript.record("eq", str(hypothesis), "equal" if cex is None else str(cex))
        return cex


def query_counts(mq: MembershipOracle, eq: EquivalenceOracle) -> dict:
    return {"mq": mq.count, "eq": eq.count}


# -- counterexample strategies ----------------------------------------------


def deep_witness(cell: Interval, min_depth: int) -> ExtendedRational:
    """A rational in ``cell`` at tree depth >= min_depth (singletons excepted)."""
    s = simplest_node_in(cell)
    if cell.is_point:
        return s.value
    ds = depth(s.value)
    if ds >= min_depth:
        return s.value
    # Find a descendant x of s whose whole subtree range lies inside the cell,
    # then descend from it alternating directions.
    v = s.value
    R = ExtendedRational._raw
    if cell.lo < v:
        c = s.lbound
        # x_t = c + t*v has bounds (c + (t-1)*v, v)
        t = gallop(lambda t: R(c.num + (t - 1) * v.num, c.den + (t - 1) * v.den) >= cell.lo)
        x = SBNode(R(c.num + t * v.num, c.den + t * v.den), R(c.num + (t - 1) * v.num, c.den + (t - 1) * v.den), v)
    else:
        c = s.rbound
        t = gallop(lambda t: R(c.num + (t - 1) * v.num, c.den + (t - 1) * v.den) <= cell.hi)
        x = SBNode(R(c.num + t * v.num, c.den + t * v.den), v, R(c.num + (t - 1) * v.num, c.den + (t - 1) * v.den))
    dx = ds + t
    return alternating_descent(x, max(0, min_depth - dx)).value


def _boundary_adjacent(cell: Interval) -> ExtendedRational:
    if cell.lo_closed:
        return cell.lo
    if not cell.lo.is_finite:
        if cell.hi_closed:
            return cell.hi
        t = simplest_node_in(cell).value
        if not cell.hi.is_finite:
            return t
        for _ in range(8):
            t = simplest_node_in(Interval(t, cell.hi)).value
        return t
    t = simplest_node_in(cell).value
    for _ in range(8):
        t = simplest_node_in(Interval(cell.lo, t)).value
    return t


def _random_in(cell: Interval, rng: random.Random) -> ExtendedRational:
    n = simplest_node_in(cell)
    for _ in range(rng.randint(0, 24)):
        nxt = child(n, rng.choice((LEFT, RIGHT)))
        if nxt.value not in cell:
            break
        n = nxt
    return n.value


@dataclass(frozen=True)
class CounterexampleStrategy:
    kind: str = "simplest"  # simplest | boundary | deep | random
    param: int = 0

    def __post_init__(self):
        if self.kind not in ("simplest", "boundary", "deep", "random"):
            raise ValueError(f"unknown strategy {self.kind!r}")

    def picker(self) -> Callable[[Sequence[Interval]], ExtendedRational]:
        """A witness chooser; 'random' pickers carry their own seeded RNG."""
        if self.kind == "simplest":
            return lambda cells: simplest_node_in(cells[0]).value
        if self.kind == "boundary":
            return lambda cells: _boundary_adjacent(cells[0])
        if self.kind == "deep":
            return lambda cells: deep_witness(cells[0], self.param)
        rng = random.Random(self.param)
        return lambda cells: _random_in(rng.choice(cells), rng)

    def __str__(self) -> str:
        if self.kind in ("deep", "random"):
            return f"{self.kind}:{self.param}"
        return self.kind


SIMPLEST = CounterexampleStrategy()


def parse_strategy(text: str) -> CounterexampleStrategy:
    m = re.fullmatch(r"(simplest|boundary|deep|random)(?::(\d+))?", text.strip())
    if m is None:
        raise ValueError(f"unknown strategy {text!r}; use simplest, boundary, deep:N or random:SEED")
    kind, param = m.group(1), m.group(2)
    if kind in ("deep", "random") and param is None:
        raise ValueError(f"strategy {kind} needs a parameter, e.g. {kind}:100")
    if kind in ("simplest", "boundary") and param is not None:
        raise ValueError(f"strategy {kind} takes no parameter")
    return CounterexampleStrategy(kind, int(param or 0))


def make_simulated_teacher(
    target: PiecewiseRepresentation,
    strategy: CounterexampleStrategy = SIMPLEST,
    transcript: Optional[Transcript] = None,
) -> tuple[MembershipOracle, EquivalenceOracle]:
    pick = strategy.picker()

    def answer(hypothesis: PiecewiseRepresentation) -> Optional[ExtendedRational]:
        cells = disagreement_cells(hypothesis, target)
        return pick(cells) if cells else None

    mq = MembershipOracle(lambda q: evaluate(target, q), transcript)
    eq = EquivalenceOracle(answer, transcript)
    return mq, eq


# -- break links --------------------------------------------------------------


def is_break_link(target: PiecewiseRepresentation, p: ExtendedRational, q: ExtendedRational) -> bool:
    if p.num == 0:
        return True
    return not is_monochromatic(target, Interval.closed(min(p, q), max(p, q)))


def enumerate_break_links(
    target: PiecewiseRepresentation, max_depth: int
) -> set[tuple[ExtendedRational, ExtendedRational]]:
    """Every break link (p, q) with q at depth <= max_depth, by exhaustive walk."""
    out = set()
    level = [ROOT]
    for _ in range(max_depth):
        nxt = []
        for p in level:
            for q in (left_child(p), right_child(p)):
                if is_break_link(target, p.value, q.value):
                    out.add((p.value, q.value))
                nxt.append(q)
        level = nxt
    return out


def full_break_link_set(target: PiecewiseRepresentation) -> set[tuple[ExtendedRational, ExtendedRational]]:
    """All break links: candidates are the edges touching a convergent of a bound."""
    nodes = {ROOT.value: ROOT}
    for b in bound_values(target):
        for c in convergents(b):
            nodes.setdefault(c, node_of(c))
    edges = set()
    for c, n in nodes.items():
        edges.add((c, left_child(n).value))
        edges.add((c, right_child(n).value))
        if c.num != 0:
            edges.add((parent_of_node(n), c))
    return {e for e in edges if is_break_link(target, *e)}
