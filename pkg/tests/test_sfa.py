import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_shortest_accepted, minterm_letters

from sblearn.generators import random_sfa
from sblearn.pwf import PiecewiseRepresentation, parse_representation, size_of
from sblearn.rational import Q
from sblearn.sfa import (
    InvalidAutomaton,
    SymbolicAutomaton,
    band_then_spike_sfa,
    constant_automaton,
    equivalent,
    find_accepted_word,
    guard_formula,
    interval_formula,
    make_sfa_teacher,
    parse_word,
    product,
    sfa_from_json,
    sfa_to_json,
    to_dot,
    upper_then_lower_sfa,
)

seeds = st.integers(min_value=0, max_value=2**32)


def word(*xs):
    return tuple(Q(x) for x in xs)


def codepoints(text):
    return tuple(Q(ord(c)) for c in text)


# -- running -------------------------------------------------------------------------


def test_upper_then_lower_runs():
    A = upper_then_lower_sfa()
    assert A.accepts(codepoints("xAb"))
    assert A.accepts(codepoints("Zz!"))
    assert not A.accepts(codepoints("aB"))
    assert not A.accepts(codepoints("A b"))
    assert not A.accepts(())
    assert A.run(codepoints("Ab")) == (True, ["s0", "s1", "s2"])


def test_band_then_spike_runs():
    A = band_then_spike_sfa()
    assert A.accepts(word(7, 14))
    assert A.accepts(word(Q(23, 3), 0, Q(27, 2)))
    assert not A.accepts(word(Q(13, 2), 14))
    assert not A.accepts(word(7, 13))
    assert not A.accepts(word(14, 7))


def test_run_rejects_infinite_letters():
    with pytest.raises(ValueError):
        band_then_spike_sfa().run((Q("inf"),))
    with pytest.raises(ValueError):
        parse_word("1 -inf")
    assert parse_word(" 13/2  1 ") == (Q(13, 2), Q(1))


def test_size():
    # s0 pieces 8 + 13 + 9, s1 pieces 7 + 7, s2 one piece (-inf, inf) of size 4
    assert [size_of(g) for g in band_then_spike_sfa().guards.values()] == [30, 14, 4]
    assert band_then_spike_sfa().size == 3 + 5 + 48
    assert constant_automaton(True).size == 1 + 1 + 4


# -- validation ------------------------------------------------------------------------


def test_validation_errors():
    g = PiecewiseRepresentation.constant("a")
    with pytest.raises(InvalidAutomaton):
        SymbolicAutomaton(["a", "a"], "a", [], {"a": g})
    with pytest.raises(InvalidAutomaton, match="initial"):
        SymbolicAutomaton(["a"], "b", [], {"a": g})
    with pytest.raises(InvalidAutomaton, match="final"):
        SymbolicAutomaton(["a"], "a", ["z"], {"a": g})
    with pytest.raises(InvalidAutomaton, match="guard"):
        SymbolicAutomaton(["a", "b"], "a", [], {"a": g})
    with pytest.raises(InvalidAutomaton, match="unknown"):
        SymbolicAutomaton(["a"], "a", [], {"a": PiecewiseRepresentation.constant("x")})


def test_guards_are_canonicalized():
    g = parse_representation("((-inf, 0], s0)((0, inf), s0)")
    A = SymbolicAutomaton(["s0"], "s0", [], {"s0": g})
    assert A.guards["s0"] == PiecewiseRepresentation.constant("s0")


# -- products and emptiness ----------------------------------------------------------


def test_difference_of_fixtures_is_nonempty():
    w = find_accepted_word(product(upper_then_lower_sfa(), band_then_spike_sfa()))
    assert w is not None
    assert upper_then_lower_sfa().accepts(w) != band_then_spike_sfa().accepts(w)


def test_self_difference_is_empty():
    for A in (upper_then_lower_sfa(), band_then_spike_sfa(), constant_automaton(False)):
        assert find_accepted_word(product(A, A)) is None
        assert equivalent(A, A)


def test_shortest_word_goldens():
    assert find_accepted_word(band_then_spike_sfa()) == word(7, 14)
    assert find_accepted_word(constant_automaton(True)) == ()
    assert find_accepted_word(constant_automaton(False)) is None
    assert len(find_accepted_word(upper_then_lower_sfa())) == 2


@given(seeds, seeds, st.sampled_from(["difference", "intersection", "union"]))
@settings(max_examples=60)
def test_product_run_coherence(s1, s2, mode):
    rng = random.Random(s1)
    A = random_sfa(rng, rng.randint(1, 4))
    rng = random.Random(s2)
    B = random_sfa(rng, rng.randint(1, 4))
    P = product(A, B, mode)
    op = {"difference": lambda a, b: a != b, "intersection": lambda a, b: a and b, "union": lambda a, b: a or b}[mode]
    letters = minterm_letters(A, B)
    wrng = random.Random(s1 ^ s2)
    for _ in range(20):
        w = tuple(wrng.choice(letters) for _ in range(wrng.randint(0, 5)))
        ok, visited = P.run(w)
        _, va = A.run(w)
        _, vb = B.run(w)
        assert visited == list(zip(va, vb))
        assert ok == op(A.accepts(w), B.accepts(w))


@given(seeds)
@settings(max_examples=80)
def test_find_accepted_word_against_minterm_search(seed):
    rng = random.Random(seed)
    A = random_sfa(rng, rng.randint(1, 5))
    w = find_accepted_word(A)
    expected = brute_shortest_accepted(A, minterm_letters(A))
    if expected is None:
        assert w is None
    else:
        assert w is not None and A.accepts(w) and len(w) == expected


@given(seeds, seeds)
@settings(max_examples=60)
def test_equivalence_matches_minterm_search(s1, s2):
    A = random_sfa(random.Random(s1), 3)
    B = random_sfa(random.Random(s2), 3)
    P = product(A, B)
    assert equivalent(A, B) == (brute_shortest_accepted(P, minterm_letters(A, B)) is None)


# -- teacher -------------------------------------------------------------------------


def test_sfa_teacher():
    A = band_then_spike_sfa()
    mq, eq = make_sfa_teacher(A)
    assert mq(word(7, 14)) and not mq(word(14))
    assert eq(A) is None
    w = eq(constant_automaton(False))
    assert A.accepts(w)
    assert (mq.count, eq.count) == (2, 2)


# -- serialization and rendering -------------------------------------------------------


@given(seeds)
@settings(max_examples=40)
def test_json_roundtrip(seed):
    rng = random.Random(seed)
    A = random_sfa(rng, rng.randint(1, 5))
    assert sfa_from_json(sfa_to_json(A)) == A


def test_json_errors():
    with pytest.raises(InvalidAutomaton):
        sfa_from_json({"states": ["a"]})
    with pytest.raises(ValueError):
        sfa_from_json({"states": ["a"], "initial": "a", "finals": [], "guards": {"a": "nonsense"}})


def test_interval_formulas():
    g = band_then_spike_sfa().guards["s0"]
    assert [interval_formula(iv) for iv, _ in g] == ["x <= 13/2", "13/2 < x <= 23/3", "23/3 < x"]
    assert interval_formula(parse_representation("((-inf, inf), a)").pieces[0][0]) == "true"
    A = upper_then_lower_sfa()
    assert guard_formula(A, "s1", "s2") == "97 <= x <= 122"
    assert guard_formula(A, "s1", "s0") == "x < 65 | 90 < x < 97 | 122 < x"
    assert guard_formula(A, "s2", "s0") == "false"


def test_dot_output():
    text = to_dot(upper_then_lower_sfa())
    assert text.startswith("digraph sfa {")
    assert '"s2" [shape=doublecircle];' in text
    assert '"s0" -> "s1" [label="65 <= x <= 90"];' in text
    assert "__start -> \"s0\";" in text
    assert text.count("->") == 1 + 2 + 3 + 1
