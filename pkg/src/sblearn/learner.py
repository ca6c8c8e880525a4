"""Exact learning of finite piecewise functions Q -> labels.

The learner keeps a sorted store D of (rational, label) pairs taken from
break links of the target.  Each hypothesis is built from D alone; each
counterexample leads, via the deepest stored ancestor of the counterexample,
to a straight branch of the Stern-Brocot tree that must contain an
undiscovered break link, which is then located by galloping search.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Optional

from .pwf import (
    Interval,
    Label,
    PiecewiseRepresentation,
    canonicalize,
    representation_from_json,
    representation_to_json,
)
from .rational import INF, NEG_INF, ZERO, ExtendedRational
from .sternbrocot import LEFT, RIGHT, ROOT, Direction, SBNode, branch_node, node_of
from .teacher import EquivalenceOracle, MembershipOracle, TeacherInconsistency

MQ = Callable[[ExtendedRational], Label]


class InvalidStore(ValueError):
    pass


class BreakLinkStore:
    """Sorted, duplicate-free (rational, label) pairs with their tree nodes."""

    def __init__(self, entries=()):
        self.qs: list[ExtendedRational] = []
        self.labels: list[Label] = []
        self.nodes: list[SBNode] = []
        for q, label in entries:
            if not self.insert(q, label):
                raise InvalidStore(f"duplicate entry {q}")

    def index(self, q: ExtendedRational) -> Optional[int]:
        i = bisect_left(self.qs, q)
        if i < len(self.qs) and self.qs[i] == q:
            return i
        return None

    def __contains__(self, q: ExtendedRational) -> bool:
        return self.index(q) is not None

    def __len__(self) -> int:
        return len(self.qs)

    def __iter__(self):
        return iter(zip(self.qs, self.labels))

    def entries(self) -> list[tuple[ExtendedRational, Label]]:
        return list(zip(self.qs, self.labels))

    def label_of(self, q: ExtendedRational) -> Label:
        i = self.index(q)
        if i is None:
            raise KeyError(q)
        return self.labels[i]

    def insert(self, q: ExtendedRational, label: Label, node: Optional[SBNode] = None) -> bool:
        """Add (q, label); returns False (and changes nothing) if q is present."""
        if not q.is_finite:
            raise InvalidStore("only finite rationals can be stored")
        i = bisect_left(self.qs, q)
        if i < len(self.qs) and self.qs[i] == q:
            return False
        self.qs.insert(i, q)
        self.labels.insert(i, label)
        self.nodes.insert(i, node if node is not None else node_of(q))
        return True

    def relabel(self, mq: MQ) -> None:
        self.labels = [mq(q) for q in self.qs]

    def copy(self) -> BreakLinkStore:
        other = BreakLinkStore()
        other.qs, other.labels, other.nodes = list(self.qs), list(self.labels), list(self.nodes)
        return other

    def validate(self) -> None:
        for a, b in zip(self.qs, self.qs[1:]):
            if not a < b:
                raise InvalidStore(f"entries out of order or duplicated at {a}, {b}")

    def neighbours_related(self) -> bool:
        """Adjacent entries are ancestor/descendant related."""
        return all(
            a.contains(b.value) or b.contains(a.value) for a, b in zip(self.nodes, self.nodes[1:])
        )

    def __repr__(self) -> str:
        return "BreakLinkStore(" + ", ".join(f"({q}, {l})" for q, l in self) + ")"


def _ancestor(a: SBNode, b: SBNode) -> bool:
    return a.value != b.value and a.contains(b.value)


def construct_representation(D: BreakLinkStore) -> PiecewiseRepresentation:
    """A canonical representation agreeing with every entry of D."""
    if len(D) == 0:
        raise InvalidStore("the store is empty")
    D.validate()
    qs, labels, nodes = D.qs, D.labels, D.nodes
    m = len(qs)
    pieces = []
    lo, lo_closed, current = NEG_INF, False, labels[0]
    for i in range(m):
        # q_{i-1} below q_i in the tree with a label change: q_i is a left bound
        if i > 0 and _ancestor(nodes[i], nodes[i - 1]) and labels[i - 1] != labels[i]:
            pieces.append((Interval(lo, qs[i], lo_closed, False), current))
            lo, lo_closed, current = qs[i], True, labels[i]
        # q_{i+1} below q_i with a label change: q_i is a right bound
        if i < m - 1 and _ancestor(nodes[i], nodes[i + 1]) and labels[i] != labels[i + 1]:
            pieces.append((Interval(lo, qs[i], lo_closed, True), labels[i]))
            lo, lo_closed, current = qs[i], False, labels[i + 1]
    pieces.append((Interval(lo, INF, lo_closed, False), labels[m - 1]))
    return canonicalize(PiecewiseRepresentation(pieces))


def _closest_ancestor_index(q_star: ExtendedRational, D: BreakLinkStore) -> int:
    if q_star in D:
        raise TeacherInconsistency(f"counterexample {q_star} is already stored with its true label")
    best = None
    for i, n in enumerate(D.nodes):
        if n.contains(q_star) and (best is None or D.nodes[best].contains(n.value)):
            best = i
    if best is None:
        raise InvalidStore("the root 0/1 must be stored")
    return best


def find_closest_ancestor(q_star: ExtendedRational, D: BreakLinkStore) -> ExtendedRational:
    """Deepest entry of D that is a strict ancestor of q_star."""
    return D.qs[_closest_ancestor_index(q_star, D)]


def _offset(r: SBNode, direction: Direction, m: int) -> SBNode:
    return r if m == 0 else branch_node(r, direction, m)


def _bs(r: SBNode, direction: Direction, k: int, hit: Callable[[int], bool]) -> tuple[SBNode, SBNode, int]:
    """Binary search on branch offsets (2^(k-1), 2^k] for the first hit.

    hit(2^(k-1)) is false (or k = 0) and hit(2^k) is true; the result is the
    edge between the offsets straddling the transition, plus the offset of
    its deeper end.
    """
    if k == 0:
        return r, branch_node(r, direction, 1), 1
    lo, hi = 1 << (k - 1), 1 << k
    while hi - lo > 1:
        mid = (lo + hi + 1) // 2
        if hit(mid):
            hi = mid
        else:
            lo = mid
    return _offset(r, direction, hi - 1), branch_node(r, direction, hi), hi


def bs_right(r: SBNode, k: int, hit: Callable[[int], bool]) -> tuple[ExtendedRational, ExtendedRational]:
    p, q, _ = _bs(r, RIGHT, k, hit)
    return p.value, q.value


def bs_left(r: SBNode, k: int, hit: Callable[[int], bool]) -> tuple[ExtendedRational, ExtendedRational]:
    p, q, _ = _bs(r, LEFT, k, hit)
    return p.value, q.value


def _search(
    i: int, q_star: ExtendedRational, D: BreakLinkStore, mq: MQ, direction: Direction, hyp_label=None
) -> tuple[SBNode, SBNode, int]:
    r = D.nodes[i]
    label = D.labels[i]
    right = direction is RIGHT
    far = r.rbound if right else r.lbound

    def beyond(x: ExtendedRational, w: ExtendedRational) -> bool:
        return x >= w if right else x <= w

    # Nearest point on this side of r, inside r's subtree, known to carry a
    # label other than r's: a stored entry, or the counterexample itself.
    witness = None
    step = 1 if right else -1
    j = i + step
    while 0 <= j < len(D) and (D.qs[j] < far if right else D.qs[j] > far):
        if D.labels[j] != label:
            witness = D.qs[j]
            break
        j += step
    cache: dict[ExtendedRational, Label] = {}
    if witness is None or not beyond(q_star, witness):
        cache[q_star] = star_label = mq(q_star)
        if hyp_label is not None and star_label == hyp_label:
            raise TeacherInconsistency(f"counterexample {q_star} agrees with the hypothesis")
        if star_label != label:
            witness = q_star
    if witness is None:
        raise TeacherInconsistency(f"no label change below {r.value} towards {q_star}")

    def hit(m: int) -> bool:
        e = branch_node(r, direction, m).value
        if beyond(e, witness):
            return True
        if e not in cache:
            cache[e] = mq(e)
        return cache[e] != label

    k = 0
    while not hit(1 << k):
        k += 1
    return _bs(r, direction, k, hit)


def search_right(r, q_star, D: BreakLinkStore, mq: MQ) -> tuple[ExtendedRational, ExtendedRational]:
    """Break link on the right branch of the stored node r, towards q_star > r."""
    p, q, _ = _search(D.index(r), q_star, D, mq, RIGHT)
    return p.value, q.value


def search_left(r, q_star, D: BreakLinkStore, mq: MQ) -> tuple[ExtendedRational, ExtendedRational]:
    p, q, _ = _search(D.index(r), q_star, D, mq, LEFT)
    return p.value, q.value


def find_break_link(r, q_star, D: BreakLinkStore, mq: MQ) -> tuple[ExtendedRational, ExtendedRational]:
    i = D.index(r)
    if i is None:
        raise InvalidStore(f"{r} is not stored")
    p, q, _ = _search(i, q_star, D, mq, LEFT if q_star < r else RIGHT)
    return p.value, q.value


@dataclass
class LearnerReport:
    result: PiecewiseRepresentation
    mq_count: int
    eq_count: int
    break_links_found: int
    iterations: int
    break_links: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "result": representation_to_json(self.result),
            "mq_count": self.mq_count,
            "eq_count": self.eq_count,
            "break_links_found": self.break_links_found,
            "iterations": self.iterations,
        }

    @classmethod
    def from_json(cls, obj) -> LearnerReport:
        return cls(
            representation_from_json(obj["result"]),
            int(obj["mq_count"]),
            int(obj["eq_count"]),
            int(obj["break_links_found"]),
            int(obj["iterations"]),
        )


class PiecewiseLearner:
    """Learner state that can be refined one counterexample at a time."""

    def __init__(self, mq: MQ):
        self.mq = mq
        self.D = BreakLinkStore()
        self.D.insert(ZERO, mq(ZERO), ROOT)
        self.break_links: list[tuple[ExtendedRational, ExtendedRational]] = []
        # MQ calls and branch offset of the most recent break-link search
        self.last_search_mq = 0
        self.last_offset = 0

    def hypothesis(self) -> PiecewiseRepresentation:
        return construct_representation(self.D)

    def refine(self, q_star: ExtendedRational, hyp_label=None) -> tuple[ExtendedRational, ExtendedRational]:
        """Process a counterexample: find a new break link and store it.

        ``hyp_label``, when given, is the hypothesis value at q_star and is
        used to reject counterexamples that are not.
        """
        if hyp_label is None:
            hyp_label = self.hypothesis()(q_star)
        before = _count(self.mq)
        i = _closest_ancestor_index(q_star, self.D)
        direction = LEFT if q_star < self.D.qs[i] else RIGHT
        p, q, self.last_offset = _search(i, q_star, self.D, self.mq, direction, hyp_label)
        self.last_search_mq = _count(self.mq) - before
        if p.value in self.D and q.value in self.D:
            raise TeacherInconsistency(f"break link ({p.value}, {q.value}) was already known")
        for n in (p, q):
            if n.value not in self.D:
                self.D.insert(n.value, self.mq(n.value), n)
        self.break_links.append((p.value, q.value))
        return p.value, q.value

    def relabel(self, mq: Optional[MQ] = None) -> None:
        if mq is not None:
            self.mq = mq
        self.D.relabel(self.mq)


def _count(mq) -> int:
    return getattr(mq, "count", 0)


def learn(
    mq: MembershipOracle,
    eq: EquivalenceOracle,
    observer: Optional[Callable[[PiecewiseLearner], None]] = None,
    max_iterations: Optional[int] = None,
) -> LearnerReport:
    """Learn the target behind (mq, eq); ``observer`` sees each new store."""
    start_mq, start_eq = _count(mq), _count(eq)
    learner = PiecewiseLearner(mq)
    iterations = 0
    while True:
        if observer is not None:
            observer(learner)
        hypothesis = learner.hypothesis()
        iterations += 1
        q_star = eq(hypothesis)
        if q_star is None:
            return LearnerReport(
                hypothesis,
                _count(mq) - start_mq,
                _count(eq) - start_eq,
                len(learner.break_links),
                iterations,
                learner.break_links,
            )
        if max_iterations is not None and iterations >= max_iterations:
            raise RuntimeError(f"no convergence after {iterations} iterations")
        learner.refine(q_star, hypothesis(q_star))
