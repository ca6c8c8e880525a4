"""Deterministic symbolic automata over Q with interval guards."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Optional, Sequence

from .pwf import (
    Interval,
    PiecewiseRepresentation,
    canonicalize,
    evaluate,
    parse_representation,
    refinement_cells,
    representation_from_json,
    representation_to_json,
    simplest_node_in,
    size_of,
)
from .rational import ExtendedRational, bit_size, parse_rational
from .sternbrocot import depth
from .teacher import EquivalenceOracle, MembershipOracle, Transcript

State = Hashable
Word = tuple[ExtendedRational, ...]


class InvalidAutomaton(ValueError):
    pass


class SymbolicAutomaton:
    """States, an initial state, final states, and per state a partition of Q
    whose labels are successor states."""

    def __init__(
        self,
        states: Iterable[State],
        initial: State,
        finals: Iterable[State],
        guards: dict[State, PiecewiseRepresentation],
    ):
        self.states = tuple(states)
        self.initial = initial
        self.finals = frozenset(finals)
        if len(set(self.states)) != len(self.states):
            raise InvalidAutomaton("duplicate state ids")
        known = set(self.states)
        if initial not in known:
            raise InvalidAutomaton(f"initial state {initial!r} is not a state")
        if not self.finals <= known:
            raise InvalidAutomaton(f"final states {sorted(map(str, self.finals - known))} are not states")
        if set(guards) != known:
            raise InvalidAutomaton("every state needs exactly one guard partition")
        self.guards = {}
        for s in self.states:
            g = guards[s]
            if not isinstance(g, PiecewiseRepresentation):
                raise InvalidAutomaton(f"guard of {s!r} is not a partition of Q")
            bad = {label for label in g.labels if label not in known}
            if bad:
                raise InvalidAutomaton(f"guard of {s!r} targets unknown states {sorted(map(str, bad))}")
            self.guards[s] = canonicalize(g)

    def step(self, s: State, q: ExtendedRational) -> State:
        return evaluate(self.guards[s], q)

    def run(self, word: Sequence[ExtendedRational]) -> tuple[bool, list[State]]:
        s = self.initial
        visited = [s]
        for q in word:
            if not q.is_finite:
                raise ValueError("words contain finite rationals only")
            s = self.step(s, q)
            visited.append(s)
        return s in self.finals, visited

    def accepts(self, word: Sequence[ExtendedRational]) -> bool:
        return self.run(word)[0]

    def transitions(self, s: State) -> dict[State, list[Interval]]:
        out: dict[State, list[Interval]] = {}
        for iv, t in self.guards[s]:
            out.setdefault(t, []).append(iv)
        return out

    @property
    def size(self) -> int:
        """|S| + |transitions| + total guard size."""
        n_trans = sum(len(self.transitions(s)) for s in self.states)
        return len(self.states) + n_trans + sum(size_of(g) for g in self.guards.values())

    def __eq__(self, other):
        if not isinstance(other, SymbolicAutomaton):
            return NotImplemented
        return (
            self.states == other.states
            and self.initial == other.initial
            and self.finals == other.finals
            and self.guards == other.guards
        )

    def __repr__(self) -> str:
        return f"SymbolicAutomaton(states={len(self.states)}, initial={self.initial!r}, finals={sorted(map(str, self.finals))})"


def constant_automaton(accept: bool) -> SymbolicAutomaton:
    g = PiecewiseRepresentation.constant("s0")
    return SymbolicAutomaton(["s0"], "s0", ["s0"] if accept else [], {"s0": g})


COMBINE = {
    "difference": lambda a, b: a != b,
    "intersection": lambda a, b: a and b,
    "union": lambda a, b: a or b,
}


def product(A: SymbolicAutomaton, B: SymbolicAutomaton, combine: str = "difference") -> SymbolicAutomaton:
    """Reachable pair automaton; guards are common refinements of both sides."""
    accept = COMBINE[combine]
    start = (A.initial, B.initial)
    seen = {start}
    order = [start]
    guards = {}
    queue = deque([start])
    while queue:
        a, b = pair = queue.popleft()
        pieces = []
        for cell, sa, sb in refinement_cells(A.guards[a], B.guards[b]):
            nxt = (sa, sb)
            pieces.append((cell, nxt))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
        guards[pair] = PiecewiseRepresentation(pieces)
    finals = [p for p in order if accept(p[0] in A.finals, p[1] in B.finals)]
    return SymbolicAutomaton(order, start, finals, guards)


def _representatives(A: SymbolicAutomaton, s: State) -> list[tuple[State, ExtendedRational]]:
    """One shallowest rational per successor of s, in guard order."""
    best: dict[State, tuple[int, ExtendedRational]] = {}
    for iv, t in A.guards[s]:
        q = simplest_node_in(iv).value
        d = depth(q)
        if t not in best or d < best[t][0]:
            best[t] = (d, q)
    return [(t, q) for t, (_, q) in best.items()]


def find_accepted_word(A: SymbolicAutomaton) -> Optional[Word]:
    """A shortest accepted word, or None if the language is empty."""
    parent: dict[State, Optional[tuple[State, ExtendedRational]]] = {A.initial: None}
    queue = deque([A.initial])
    while queue:
        s = queue.popleft()
        if s in A.finals:
            word = []
            while parent[s] is not None:
                s, q = parent[s]
                word.append(q)
            return tuple(reversed(word))
        for t, q in _representatives(A, s):
            if t not in parent:
                parent[t] = (s, q)
                queue.append(t)
    return None


def equivalent(A: SymbolicAutomaton, B: SymbolicAutomaton) -> bool:
    return find_accepted_word(product(A, B, "difference")) is None


def make_sfa_teacher(
    target: SymbolicAutomaton, transcript: Optional[Transcript] = None
) -> tuple[MembershipOracle, EquivalenceOracle]:
    mq = MembershipOracle(lambda w: target.accepts(tuple(w)), transcript)
    eq = EquivalenceOracle(lambda h: find_accepted_word(product(target, h, "difference")), transcript)
    return mq, eq


def parse_word(text: str) -> Word:
    word = tuple(parse_rational(t) for t in text.split())
    if any(not q.is_finite for q in word):
        raise ValueError("words contain finite rationals only")
    return word


def format_word(word: Sequence[ExtendedRational]) -> str:
    return " ".join(map(str, word))


# -- serialization ------------------------------------------------------------


def sfa_to_json(A: SymbolicAutomaton) -> dict:
    return {
        "states": [str(s) for s in A.states],
        "initial": str(A.initial),
        "finals": [str(s) for s in A.states if s in A.finals],
        "guards": {str(s): representation_to_json(A.guards[s]) for s in A.states},
    }


def sfa_from_json(obj) -> SymbolicAutomaton:
    try:
        states = [str(s) for s in obj["states"]]
        guards = {str(s): representation_from_json(g) for s, g in obj["guards"].items()}
        return SymbolicAutomaton(states, str(obj["initial"]), [str(s) for s in obj["finals"]], guards)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidAutomaton(f"malformed automaton JSON: {exc}") from exc


def _short(q: ExtendedRational) -> str:
    return str(q.num) if q.den == 1 else str(q)


def interval_formula(iv: Interval, var: str = "x") -> str:
    lo, hi = _short(iv.lo), _short(iv.hi)
    lo_op = "<=" if iv.lo_closed else "<"
    hi_op = "<=" if iv.hi_closed else "<"
    if iv.is_point:
        return f"{var} = {lo}"
    if not iv.lo.is_finite and not iv.hi.is_finite:
        return "true"
    if not iv.lo.is_finite:
        return f"{var} {hi_op} {hi}"
    if not iv.hi.is_finite:
        return f"{lo} {lo_op} {var}"
    return f"{lo} {lo_op} {var} {hi_op} {hi}"


def guard_formula(A: SymbolicAutomaton, s: State, t: State) -> str:
    """Disjunction of the interval constraints leading from s to t."""
    ivs = A.transitions(s).get(t, [])
    if not ivs:
        return "false"
    return " | ".join(interval_formula(iv) for iv in ivs)


def to_dot(A: SymbolicAutomaton, name: str = "sfa") -> str:
    def q(x) -> str:
        return '"' + str(x).replace('"', '\\"') + '"'

    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for s in A.states:
        shape = "doublecircle" if s in A.finals else "circle"
        lines.append(f"  {q(s)} [shape={shape}];")
    lines.append(f"  __start -> {q(A.initial)};")
    for s in A.states:
        for t in A.transitions(s):
            lines.append(f"  {q(s)} -> {q(t)} [label={q(guard_formula(A, s, t))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- fixtures -----------------------------------------------------------------


def upper_then_lower_sfa() -> SymbolicAutomaton:
    """Accepts code-point words containing an uppercase ASCII letter directly
    followed by a lowercase one."""
    g0 = parse_representation("((-inf, 65), s0)([65, 90], s1)((90, inf), s0)")
    g1 = parse_representation("((-inf, 65), s0)([65, 90], s1)((90, 97), s0)([97, 122], s2)((122, inf), s0)")
    g2 = PiecewiseRepresentation.constant("s2")
    return SymbolicAutomaton(["s0", "s1", "s2"], "s0", ["s2"], {"s0": g0, "s1": g1, "s2": g2})


def band_then_spike_sfa() -> SymbolicAutomaton:
    """Accepts series with a reading in (13/2, 23/3] followed later by one above 13."""
    g0 = parse_representation("((-inf, 13/2], s0)((13/2, 23/3], s1)((23/3, inf), s0)")
    g1 = parse_representation("((-inf, 13], s1)((13, inf), s2)")
    g2 = PiecewiseRepresentation.constant("s2")
    return SymbolicAutomaton(["s0", "s1", "s2"], "s0", ["s2"], {"s0": g0, "s1": g1, "s2": g2})


def max_boundary_bits(A: SymbolicAutomaton) -> int:
    return max((bit_size(iv.hi) for g in A.guards.values() for iv, _ in g if iv.hi.is_finite), default=0)
