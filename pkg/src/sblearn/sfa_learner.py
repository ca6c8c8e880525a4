"""Learning deterministic symbolic automata from word membership and
automaton equivalence queries.

States are identified by rows of an observation table (acceptance of
access-word + suffix for every known suffix).  The outgoing guard of each
state is learned by its own PiecewiseLearner, whose labels are the rows of
the one-letter extensions.  Guard equivalence queries are never asked
directly: counterexamples to the whole automaton are split by binary search
over prefixes into either a new suffix or a rational on which one guard is
wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .learner import PiecewiseLearner
from .pwf import PiecewiseRepresentation
from .rational import ExtendedRational
from .sfa import SymbolicAutomaton, Word, format_word, sfa_from_json, sfa_to_json
from .teacher import MembershipOracle, TeacherInconsistency

Row = tuple[bool, ...]


class NotACounterexample(ValueError):
    pass


class ObservationTable:
    def __init__(self, word_mq: Callable[[Word], bool]):
        self.word_mq = word_mq
        self.cache: dict[Word, bool] = {}
        self.access: list[Word] = []
        self.suffixes: list[Word] = [()]
        self.learners: dict[Word, PiecewiseLearner] = {}
        self.inner: dict[Word, MembershipOracle] = {}
        self.split_queries = 0
        self._add_access(())

    # -- queries ------------------------------------------------------------

    def member(self, w: Word) -> bool:
        if w not in self.cache:
            self.cache[w] = bool(self.word_mq(w))
        return self.cache[w]

    def row(self, w: Word) -> Row:
        return tuple(self.member(w + e) for e in self.suffixes)

    # -- structure ----------------------------------------------------------

    def _add_access(self, u: Word) -> None:
        self.access.append(u)
        oracle = MembershipOracle(lambda q, u=u: self.row(u + (q,)))
        self.inner[u] = oracle
        self.learners[u] = PiecewiseLearner(oracle)

    def access_rows(self) -> dict[Row, Word]:
        return {self.row(u): u for u in self.access}

    def is_reduced(self) -> bool:
        return len(self.access_rows()) == len(self.access)

    def close(self) -> None:
        """Promote one-letter extensions with unseen rows to access words."""
        changed = True
        while changed:
            changed = False
            rows = self.access_rows()
            for u in list(self.access):
                D = self.learners[u].D
                for q, label in zip(list(D.qs), list(D.labels)):
                    if label not in rows:
                        self._add_access(u + (q,))
                        rows[label] = u + (q,)
                        changed = True
        if not self.is_reduced():
            raise TeacherInconsistency("two access words share a row")

    def add_suffix(self, v: Word) -> None:
        if v in self.suffixes:
            raise TeacherInconsistency(f"suffix {format_word(v)!r} is already known")
        self.suffixes.append(v)
        # Finer rows keep every old break link a break link; only labels change.
        for u in self.access:
            self.learners[u].relabel()

    # -- hypothesis ---------------------------------------------------------

    def state_id(self, u: Word) -> str:
        return f"q{self.access.index(u)}"

    def learn_guard(self, u: Word) -> PiecewiseRepresentation:
        """Current guard of the state reached by u, labeled with state ids."""
        rows = self.access_rows()
        return self.learners[u].hypothesis().map_labels(lambda row: self.state_id(rows[row]))

    def hypothesis(self) -> SymbolicAutomaton:
        states = [self.state_id(u) for u in self.access]
        finals = [self.state_id(u) for u in self.access if self.member(u)]
        guards = {self.state_id(u): self.learn_guard(u) for u in self.access}
        return SymbolicAutomaton(states, states[0], finals, guards)

    def access_of(self, H: SymbolicAutomaton, prefix: Sequence[ExtendedRational]) -> Word:
        s = H.initial
        for q in prefix:
            s = H.step(s, q)
        return self.access[int(s[1:])]

    # -- counterexamples ----------------------------------------------------

    def process_counterexample(self, w: Word, H: SymbolicAutomaton) -> str:
        """Use w to fix the table; returns 'guard' or 'state'."""
        n = len(w)

        def alpha(i: int) -> bool:
            x = self.access_of(H, w[:i]) + w[i:]
            if x not in self.cache:
                self.split_queries += 1
            return self.member(x)

        a0 = self.member(w)
        if a0 == H.accepts(w):
            raise NotACounterexample(f"{format_word(w)!r} is classified correctly")
        lo, hi = 0, n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if alpha(mid) == a0:
                lo = mid
            else:
                hi = mid
        u = self.access_of(H, w[:lo])
        a = w[lo]
        v = w[lo + 1 :]
        u_next = self.access_of(H, w[: lo + 1])
        learner = self.learners[u]
        if self.row(u + (a,)) != self.row(u_next):
            # the guard of u sends a to the wrong state
            learner.refine(a, self.row(u_next))
            return "guard"
        self.add_suffix(v)
        if self.row(u + (a,)) in self.access_rows():
            raise TeacherInconsistency("new suffix failed to separate a state")
        self._add_access(u + (a,))
        self.close()
        label = self.row(u + (a,))
        if a not in learner.D and learner.hypothesis()(a) != label:
            learner.refine(a)
        return "state"


@dataclass
class SfaLearnerReport:
    result: SymbolicAutomaton
    word_mq_count: int
    sfa_eq_count: int
    inner_mq_counts: dict[str, int] = field(default_factory=dict)
    max_counterexample_length: int = 0
    counterexamples: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "result": sfa_to_json(self.result),
            "word_mq_count": self.word_mq_count,
            "sfa_eq_count": self.sfa_eq_count,
            "inner_mq_counts": dict(self.inner_mq_counts),
            "max_counterexample_length": self.max_counterexample_length,
        }

    @classmethod
    def from_json(cls, obj) -> SfaLearnerReport:
        return cls(
            sfa_from_json(obj["result"]),
            int(obj["word_mq_count"]),
            int(obj["sfa_eq_count"]),
            {str(k): int(v) for k, v in obj["inner_mq_counts"].items()},
            int(obj["max_counterexample_length"]),
        )


def learn_sfa(
    word_mq: Callable[[Word], bool],
    sfa_eq: Callable[[SymbolicAutomaton], Optional[Word]],
    max_rounds: Optional[int] = None,
    observer: Optional[Callable[[ObservationTable], None]] = None,
) -> SfaLearnerReport:
    start_mq = getattr(word_mq, "count", 0)
    start_eq = getattr(sfa_eq, "count", 0)
    table = ObservationTable(word_mq)
    table.close()
    counterexamples = []
    rounds = 0
    while True:
        if observer is not None:
            observer(table)
        H = table.hypothesis()
        rounds += 1
        w = sfa_eq(H)
        if w is None:
            inner = {table.state_id(u): table.inner[u].count for u in table.access}
            return SfaLearnerReport(
                H,
                getattr(word_mq, "count", len(table.cache)) - start_mq,
                getattr(sfa_eq, "count", rounds) - start_eq,
                inner,
                max((len(c) for c in counterexamples), default=0),
                counterexamples,
            )
        if max_rounds is not None and rounds >= max_rounds:
            raise RuntimeError(f"no convergence after {rounds} equivalence queries")
        w = tuple(w)
        counterexamples.append(w)
        table.process_counterexample(w, H)
        table.close()
