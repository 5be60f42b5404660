import numpy as np
import pytest
from hypothesis import given, strategies as st

from qheis.braid import (BraidParseError, BraidWord, braid_rep, check_braid_relations,
                         check_turaev, inverse_pair_residual, link_invariant, markov_trace,
                         markov_two_partial_trace, parse_braid, trace_is_w_free)
from qheis.fock import RepParams


def test_parse_with_header():
    b = parse_braid("B3: s1 s2^-1 s1")
    assert b.m == 3 and b.letters == ((1, 1), (2, -1), (1, 1))
    assert str(b) == "B3: s1 s2^-1 s1"


def test_parse_infers_strands():
    assert parse_braid("s1 s3").m == 4
    assert parse_braid("").m == 1


@pytest.mark.parametrize("text,pos", [("B2: s2", 4), ("s0", 0), ("s1s2", 2), ("s1 x", 3), ("s1 s^-1", 3)])
def test_parse_errors(text, pos):
    with pytest.raises(BraidParseError) as err:
        parse_braid(text)
    assert err.value.position == pos


letters = st.lists(st.tuples(st.integers(1, 3), st.sampled_from([1, -1])), max_size=8)


@given(letters, letters)
def test_writhe_is_additive(x, y):
    a, b = BraidWord(4, tuple(x)), BraidWord(4, tuple(y))
    assert (a * b).writhe == a.writhe + b.writhe
    assert a.inverse().writhe == -a.writhe


@given(letters)
def test_round_trip_and_free_reduce(x):
    b = BraidWord(4, tuple(x))
    assert parse_braid(str(b)) == b
    assert len((b * b.inverse()).free_reduce()) == 0


def test_stabilize():
    b = parse_braid("B2: s1").stabilize(-1)
    assert b.m == 3 and b.letters[-1] == (2, -1)


P = RepParams(0.1, 0.2, 1.0, 0.0, D=6)


def test_empty_word_is_identity():
    assert np.allclose(braid_rep(BraidWord(2), P).data, np.eye(36))


def test_braid_relations_single_color():
    assert check_braid_relations([P, P, P]).passed


def test_braid_relations_colored():
    colors = [P, P.with_(e=0.5, n=1.0), P.with_(e=0.8, n=-0.3)]
    rep = check_braid_relations(colors)
    assert rep.passed, rep.details


def test_inverse_letters():
    assert inverse_pair_residual([P, P.with_(e=0.6)]) < 1e-10


def test_convergence_warning():
    m = braid_rep(parse_braid("s1"), P.with_(h=-0.1))
    assert m.warnings


def test_turaev_holds_without_w():
    rep = check_turaev(RepParams(0.05, 0.0, 1.0, 0.0, D=16))
    assert rep.passed, rep.details


def test_turaev_raising_part_at_nonzero_w():
    # with mu = id the partial trace of R keeps a strictly raising part when w != 0
    rep = check_turaev(RepParams(0.05, 0.2, 1.0, 0.0, D=16))
    assert rep.details["trace_R"]["diagonal_error"] < 1e-6
    assert rep.details["trace_R_inverse"]["diagonal_error"] < 1e-6
    assert rep.details["trace_R"]["off_diagonal_max"] > 0.1


Q = RepParams(0.3, 0.2, 1.0, 0.0, D=8)


def test_markov_conjugation():
    x = parse_braid("B3: s1 s2^-1 s1 s2")
    y = parse_braid("B3: s2 s1")
    conj = y * x * y.inverse()
    assert markov_trace(conj.free_reduce(), Q) == pytest.approx(markov_trace(x, Q), rel=1e-9)
    assert markov_trace(x.cyclic_shift(1), Q) == pytest.approx(markov_trace(x, Q), rel=1e-9)


@pytest.mark.parametrize("sign", [1, -1])
def test_markov_stabilization_partial_trace(sign):
    # the negative stabilization sums a series in h e that only converges for small |h e|
    res = markov_two_partial_trace(parse_braid("B2: s1 s1"), RepParams(0.05, 0.2, 1.0, 0.0, D=12), sign)
    assert res["error"] < 1e-6
    assert res["error"] <= res["tail"] + 1e-12


@pytest.mark.parametrize("word", ["B2: s1 s1 s1", "B3: s1 s2^-1 s1 s2^-1", "B2: s1^-1"])
def test_trace_independent_of_w(word):
    b = parse_braid(word)
    values = [markov_trace(b, Q.with_(w=w)) for w in (0.0, 0.1, 0.3)]
    assert max(abs(v - values[0]) for v in values) < 1e-8
    free, count = trace_is_w_free(b, Q.with_(D=5))
    assert free and count == 5 ** b.m


def test_trace_of_R_does_not_converge():
    res = link_invariant(parse_braid("B2: s1"), Q)
    assert not res.converged
    assert res.tail_estimate > 0
    assert set(res.to_dict()) >= {"P", "tail", "converged", "writhe", "m"}


def test_link_invariant_needs_cutoff():
    with pytest.raises(ValueError):
        link_invariant(parse_braid("s1"), Q.with_(D=3))
