"""Intervals over Q and finite piecewise functions Q -> labels."""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .rational import (
    INF,
    NEG_INF,
    ExtendedRational,
    bit_size,
    parse_rational,
    rational_from_json,
    rational_to_json,
)
from .sternbrocot import LEFT, RIGHT, ROOT, SBNode, branch_node

Label = Hashable


class InvalidInterval(ValueError):
    pass


class InvalidRepresentation(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Interval:
    lo: ExtendedRational
    hi: ExtendedRational
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.lo == NEG_INF and self.lo_closed or self.hi == INF and self.hi_closed:
            raise InvalidInterval("infinite endpoints are never included")
        if not (self.lo < self.hi or (self.lo == self.hi and self.lo_closed and self.hi_closed)):
            raise InvalidInterval(f"empty interval {self}")

    @classmethod
    def closed(cls, lo, hi) -> Interval:
        return cls(lo, hi, True, True)

    @classmethod
    def point(cls, q: ExtendedRational) -> Interval:
        return cls(q, q, True, True)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def below(self, q: ExtendedRational) -> bool:
        """q lies strictly left of every element."""
        c = q._cmp(self.lo)
        return c < 0 or (c == 0 and not self.lo_closed)

    def above(self, q: ExtendedRational) -> bool:
        c = q._cmp(self.hi)
        return c > 0 or (c == 0 and not self.hi_closed)

    def __contains__(self, q: ExtendedRational) -> bool:
        return q.is_finite and not self.below(q) and not self.above(q)

    def intersects(self, other: Interval) -> bool:
        def before(a: Interval, b: Interval) -> bool:
            c = a.hi._cmp(b.lo)
            return c < 0 or (c == 0 and not (a.hi_closed and b.lo_closed))

        return not before(self, other) and not before(other, self)

    def __str__(self) -> str:
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'}"


_INTERVAL = re.compile(r"\s*([\[(])\s*([^,\s]+)\s*,\s*([^\])\s]+)\s*([\])])\s*")


def parse_interval(text: str) -> Interval:
    m = _INTERVAL.fullmatch(text)
    if m is None:
        raise InvalidInterval(f"not an interval: {text!r}")
    return Interval(parse_rational(m.group(2)), parse_rational(m.group(3)), m.group(1) == "[", m.group(4) == "]")


class PiecewiseRepresentation:
    """An interval partition of Q with one label per interval."""

    __slots__ = ("pieces", "_his")

    def __init__(self, pieces: Iterable[tuple[Interval, Label]]):
        pieces = tuple((iv, label) for iv, label in pieces)
        if not pieces:
            raise InvalidRepresentation("a representation needs at least one piece")
        if pieces[0][0].lo != NEG_INF or pieces[-1][0].hi != INF:
            raise InvalidRepresentation("pieces must cover -inf to inf")
        for (a, _), (b, _) in zip(pieces, pieces[1:]):
            if a.hi != b.lo or a.hi_closed == b.lo_closed:
                raise InvalidRepresentation(f"{a} and {b} do not partition their common endpoint")
        for _, label in pieces:
            if label is None or label == "":
                raise InvalidRepresentation("labels must be non-empty")
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "_his", [iv.hi for iv, _ in pieces])

    def __setattr__(self, name, value):
        raise AttributeError("PiecewiseRepresentation is immutable")

    @classmethod
    def constant(cls, label: Label) -> PiecewiseRepresentation:
        return cls([(Interval(NEG_INF, INF), label)])

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseRepresentation):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    @property
    def labels(self) -> list[Label]:
        return [label for _, label in self.pieces]

    @property
    def is_canonical(self) -> bool:
        return all(a != b for a, b in zip(self.labels, self.labels[1:]))

    def piece_index(self, q: ExtendedRational) -> int:
        i = bisect_left(self._his, q)
        if self._his[i] == q and not self.pieces[i][0].hi_closed:
            i += 1
        return i

    def __call__(self, q: ExtendedRational) -> Label:
        return evaluate(self, q)

    def map_labels(self, f: Callable[[Label], Label]) -> PiecewiseRepresentation:
        return PiecewiseRepresentation((iv, f(label)) for iv, label in self.pieces)

    def __str__(self) -> str:
        return "".join(f"({iv}, {label})" for iv, label in self.pieces)

    def __repr__(self) -> str:
        return f"PiecewiseRepresentation({str(self)!r})"


_PIECE = re.compile(r"\(\s*([\[(][^\])]*[\])])\s*,\s*([^()\[\],\s]+)\s*\)")


def parse_representation(text: str) -> PiecewiseRepresentation:
    """Parse the printed form, e.g. ``"((-inf, 0], A)((0, inf), B)"``."""
    pieces = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _PIECE.match(text, pos)
        if m is None:
            raise InvalidRepresentation(f"cannot parse representation at {text[pos:]!r}")
        pieces.append((parse_interval(m.group(1)), m.group(2)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return PiecewiseRepresentation(pieces)


def evaluate(r: PiecewiseRepresentation, q: ExtendedRational) -> Label:
    if not q.is_finite:
        raise ValueError("piecewise functions are defined on finite rationals only")
    return r.pieces[r.piece_index(q)][1]


def _join(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo, b.hi, a.lo_closed, b.hi_closed)


def canonicalize(r: PiecewiseRepresentation) -> PiecewiseRepresentation:
    out: list[tuple[Interval, Label]] = []
    for iv, label in r.pieces:
        if out and out[-1][1] == label:
            out[-1] = (_join(out[-1][0], iv), label)
        else:
            out.append((iv, label))
    return PiecewiseRepresentation(out)


def size_of(r: PiecewiseRepresentation) -> int:
    return sum(bit_size(iv.lo) + bit_size(iv.hi) for iv, _ in r.pieces)


def bounds_of(r: PiecewiseRepresentation) -> list[tuple[ExtendedRational, str]]:
    """Finite endpoints classified as 'left', 'right' or 'both' bounds."""
    kinds: dict[ExtendedRational, set[str]] = {}
    for iv, _ in r.pieces:
        if iv.lo.is_finite:
            kinds.setdefault(iv.lo, set())
            if iv.lo_closed:
                kinds[iv.lo].add("left")
        if iv.hi.is_finite:
            kinds.setdefault(iv.hi, set())
            if iv.hi_closed:
                kinds[iv.hi].add("right")
    out = []
    for q in sorted(kinds):
        k = kinds[q]
        out.append((q, "both" if len(k) == 2 else k.pop()))
    return out


def bound_values(r: PiecewiseRepresentation) -> list[ExtendedRational]:
    return [q for q, _ in bounds_of(r)]


def monochromatic_label(r: PiecewiseRepresentation, I: Interval) -> Optional[Label]:
    """The single label r takes on I, or None if I is not monochromatic."""
    lo_piece = r.piece_index(I.lo) if I.lo.is_finite else 0
    labels = set()
    for iv, label in r.pieces[lo_piece:]:
        if not iv.intersects(I):
            if iv.lo > I.hi:
                break
            continue
        labels.add(label)
        if len(labels) > 1:
            return None
    return labels.pop()


def is_monochromatic(r: PiecewiseRepresentation, I: Interval) -> bool:
    return monochromatic_label(r, I) is not None


def _probe(cell: Interval) -> ExtendedRational:
    if cell.is_point:
        return cell.lo
    lo, hi = cell.lo, cell.hi
    if lo.den == 0 and hi.den == 0:
        return ExtendedRational._raw(0, 1)
    return ExtendedRational(lo.num + hi.num, lo.den + hi.den)


def refinement_cells(
    r1: PiecewiseRepresentation, r2: PiecewiseRepresentation
) -> list[tuple[Interval, Label, Label]]:
    """Maximal cells of the common refinement, each with the labels of r1 and r2."""
    points = sorted({iv.lo for iv, _ in r1.pieces[1:]} | {iv.lo for iv, _ in r2.pieces[1:]})
    elementary: list[Interval] = []
    prev = NEG_INF
    for x in points:
        elementary.append(Interval(prev, x))
        elementary.append(Interval.point(x))
        prev = x
    elementary.append(Interval(prev, INF))
    cells: list[tuple[Interval, Label, Label]] = []
    p1, p2 = r1.pieces, r2.pieces
    i = j = 0
    for c in elementary:
        q = _probe(c)
        # cells are visited left to right, so each piece pointer only advances
        while p1[i][0].above(q):
            i += 1
        while p2[j][0].above(q):
            j += 1
        l1, l2 = p1[i][1], p2[j][1]
        if cells and cells[-1][1] == l1 and cells[-1][2] == l2:
            cells[-1] = (_join(cells[-1][0], c), l1, l2)
        else:
            cells.append((c, l1, l2))
    return cells


def disagreement_cells(r1: PiecewiseRepresentation, r2: PiecewiseRepresentation) -> list[Interval]:
    return [c for c, l1, l2 in refinement_cells(r1, r2) if l1 != l2]


def first_disagreement(
    r1: PiecewiseRepresentation,
    r2: PiecewiseRepresentation,
    pick: Optional[Callable[[Sequence[Interval]], ExtendedRational]] = None,
) -> Optional[ExtendedRational]:
    """A rational where r1 and r2 differ, or None if they are pointwise equal.

    Without ``pick`` the witness is the simplest rational of the leftmost
    disagreement cell.
    """
    cells = disagreement_cells(r1, r2)
    if not cells:
        return None
    if pick is None:
        return simplest_rational_in(cells[0])
    return pick(cells)


def gallop(pred: Callable[[int], bool]) -> int:
    """Smallest t >= 1 with pred(t), for pred monotone false-then-true."""
    lo, hi = 0, 1
    while not pred(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def simplest_node_in(I: Interval, start: SBNode = ROOT) -> SBNode:
    """Shallowest node of the subtree at ``start`` lying in I.

    ``start``'s subtree range must intersect I. Each straight run of the
    descent is located by galloping, so the cost is logarithmic in run length.
    """
    n = start
    R = ExtendedRational._raw
    while True:
        v = n.value
        if I.below(v):
            c = n.rbound
            t = gallop(lambda t: not I.below(R(v.num + t * c.num, v.den + t * c.den)))
            n = branch_node(n, RIGHT, t)
        elif I.above(v):
            c = n.lbound
            t = gallop(lambda t: not I.above(R(v.num + t * c.num, v.den + t * c.den)))
            n = branch_node(n, LEFT, t)
        else:
            return n


def simplest_rational_in(I: Interval) -> ExtendedRational:
    return simplest_node_in(I).value


# -- JSON -------------------------------------------------------------------


def interval_to_json(iv: Interval) -> dict:
    return {
        "lo": rational_to_json(iv.lo),
        "hi": rational_to_json(iv.hi),
        "lo_closed": iv.lo_closed,
        "hi_closed": iv.hi_closed,
    }


def representation_to_json(r: PiecewiseRepresentation, label_to_json=str) -> dict:
    pieces = []
    for iv, label in r.pieces:
        d = interval_to_json(iv)
        d["label"] = label_to_json(label)
        pieces.append(d)
    return {"pieces": pieces}


def representation_from_json(obj, label_from_json=str) -> PiecewiseRepresentation:
    try:
        raw = obj["pieces"]
        pieces = []
        for p in raw:
            iv = Interval(
                rational_from_json(p["lo"]),
                rational_from_json(p["hi"]),
                bool(p["lo_closed"]),
                bool(p["hi_closed"]),
            )
            pieces.append((iv, label_from_json(p["label"])))
    except (KeyError, TypeError) as exc:
        raise InvalidRepresentation(f"malformed representation JSON: {exc}") from exc
    return PiecewiseRepresentation(pieces)
