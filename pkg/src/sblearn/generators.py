"""Seeded random rationals, piecewise functions and automata."""

from __future__ import annotations

import random
from typing import Optional

from .pwf import Interval, PiecewiseRepresentation
from .rational import INF, NEG_INF, ExtendedRational
from .sfa import SymbolicAutomaton
from .sternbrocot import SBEncoding, sb_decode


def random_run(rng: random.Random, run_bits: int) -> int:
    # log-uniform magnitude, so shallow and deep runs are both common
    return rng.randint(1, 1 << rng.randint(0, run_bits))


def random_encoding(rng: random.Random, max_runs: int = 8, run_bits: int = 64) -> SBEncoding:
    n = rng.randint(1, max_runs)
    return SBEncoding(rng.choice((-1, 1)), tuple(random_run(rng, run_bits) for _ in range(n)))


def random_rational(rng: random.Random, max_runs: int = 8, run_bits: int = 64) -> ExtendedRational:
    return sb_decode(random_encoding(rng, max_runs, run_bits))


def random_bits_rational(rng: random.Random, bits: int, positive: bool = False) -> ExtendedRational:
    """Numerator and denominator drawn uniformly below 2**bits."""
    num = rng.randint(1 if positive else 0, (1 << bits) - 1)
    den = rng.randint(1, (1 << bits) - 1)
    if not positive and rng.random() < 0.5:
        num = -num
    return ExtendedRational(num, den)


def alternating_labels(rng: random.Random, k: int, alphabet: Optional[list] = None) -> list:
    alphabet = alphabet or ["A", "B"]
    labels = [rng.choice(alphabet)]
    for _ in range(k - 1):
        labels.append(rng.choice([a for a in alphabet if a != labels[-1]]))
    return labels


def random_representation(
    rng: random.Random,
    pieces: Optional[int] = None,
    max_runs: int = 8,
    run_bits: int = 64,
    alphabet: Optional[list] = None,
    singleton_rate: float = 0.1,
) -> PiecewiseRepresentation:
    """A random canonical representation with ``pieces`` pieces (default 1..32)."""
    k = pieces if pieces is not None else rng.randint(1, 32)
    pts: set[ExtendedRational] = set()
    ivs: list[Interval] = []
    # Each cut point adds one piece, or two when it becomes a singleton.
    cuts: list[tuple[ExtendedRational, str]] = []
    remaining = k - 1
    while remaining > 0:
        q = random_rational(rng, max_runs, run_bits)
        if q in pts:
            continue
        pts.add(q)
        if remaining >= 2 and rng.random() < singleton_rate:
            cuts.append((q, "point"))
            remaining -= 2
        else:
            cuts.append((q, rng.choice(("left", "right"))))
            remaining -= 1
    cuts.sort(key=lambda c: c[0])
    lo, lo_closed = NEG_INF, False
    for q, kind in cuts:
        if kind == "point":
            ivs.append(Interval(lo, q, lo_closed, False))
            ivs.append(Interval.point(q))
            lo, lo_closed = q, False
        elif kind == "left":  # q opens the next piece
            ivs.append(Interval(lo, q, lo_closed, False))
            lo, lo_closed = q, True
        else:
            ivs.append(Interval(lo, q, lo_closed, True))
            lo, lo_closed = q, False
    ivs.append(Interval(lo, INF, lo_closed, False))
    labels = alternating_labels(rng, len(ivs), alphabet)
    return PiecewiseRepresentation(zip(ivs, labels))


def random_sfa(
    rng: random.Random,
    n_states: int,
    max_pieces: int = 3,
    max_runs: int = 4,
    run_bits: int = 8,
) -> SymbolicAutomaton:
    states = [f"s{i}" for i in range(n_states)]
    guards = {}
    for s in states:
        k = rng.randint(1, max_pieces)
        if n_states == 1:
            guards[s] = PiecewiseRepresentation.constant(s)
        else:
            guards[s] = random_representation(rng, k, max_runs, run_bits, alphabet=states)
    finals = [s for s in states if rng.random() < 0.5]
    return SymbolicAutomaton(states, states[0], finals, guards)

