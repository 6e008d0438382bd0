import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from krcrystal import pbw
from krcrystal.fixtures import load_signatures
from krcrystal.model import MODEL_KEYS, get_model


def datum(m, max_entry=3):
    return st.lists(st.integers(0, max_entry), min_size=m.M, max_size=m.M).map(lambda v: np.array(v, dtype=np.int64))


def model_and_datum():
    return st.sampled_from(MODEL_KEYS).map(get_model).flatmap(lambda m: st.tuples(st.just(m), datum(m)))


def test_e6_i1_template():
    m = get_model("E6r6")
    assert pbw.sigma_template(m, 1).roots(m) == [
        ("0/11111", "0/01111"),
        ("1/11111", "1/01111"),
        ("1/11211", "1/01211"),
        ("1/11221", "1/01221"),
    ]


def test_e6_i5_template():
    m = get_model("E6r6")
    pairs = pbw.sigma_template(m, 5).roots(m)
    assert len(pairs) == 4
    assert pairs[0] == ("0/00011", "0/00001")


def test_e7_i2_template():
    m = get_model("E7r7")
    pairs = pbw.sigma_template(m, 2).roots(m)
    assert len(pairs) == 6
    assert pairs[-1] == ("2/123321", "1/123321")


@pytest.mark.parametrize("key", MODEL_KEYS)
def test_templates_match_fixtures(key):
    assert pbw.template_mismatches(get_model(key)) == []


@pytest.mark.parametrize("key", MODEL_KEYS)
def test_template_differences_are_alpha_i(key):
    m = get_model(key)
    for i in m.J:
        alpha = m.rs.simple_root(i)
        for minus, plus in pbw.sigma_template(m, i).pairs:
            assert np.array_equal(np.array(m.jroots[minus]) - m.jroots[plus], alpha)


def test_swapped_pair_is_detected():
    m = get_model("E6r6")
    data = load_signatures()
    data["E6r6"]["1"][0], data["E6r6"]["1"][1] = data["E6r6"]["1"][1], data["E6r6"]["1"][0]
    assert pbw.template_mismatches(m, data) == [1]


def test_template_rejects_r():
    with pytest.raises(ValueError):
        pbw.sigma_template(get_model("E6r6"), 6)


@pytest.mark.parametrize(
    "seq,out",
    [("+-", "··"), ("-++-", "-+··"), ("", ""), ("++--", "····"), ("-+", "-+"), ("+-+--", "····-")],
)
def test_reduce_signature(seq, out):
    assert "".join(pbw.reduce_signature(list(seq))) == out


@given(st.lists(st.sampled_from("+-"), max_size=30))
def test_reduced_signature_has_no_plus_before_minus(seq):
    red = [s for s in pbw.reduce_signature(seq) if s != pbw.DOT]
    assert red == sorted(red, key=lambda s: s == "+")
    assert red.count("-") - red.count("+") == seq.count("-") - seq.count("+")


def test_zero_datum(model):
    z = np.zeros(model.M, dtype=np.int64)
    one = np.zeros(model.M, dtype=np.int64)
    one[0] = 1
    assert np.array_equal(pbw.f(model, z, model.r), one)
    for i in model.J:
        assert pbw.f(model, z, i) is None
        assert pbw.e(model, z, i) is None
    for i in model.rs.nodes:
        assert pbw.eps(model, z, i) == 0
    assert np.array_equal(pbw.wt(model, z, 2), 2 * model.rs.fundamental_weight(model.r))
    assert pbw.phi(model, one, model.r, 1) == 0
    assert pbw.eps(model, one, model.r) == 1


@given(model_and_datum(), st.data())
def test_round_trips(md, data):
    m, c = md
    i = data.draw(st.sampled_from(list(m.rs.nodes)))
    fc = pbw.f(m, c, i)
    if fc is not None:
        assert np.array_equal(pbw.e(m, fc, i), c)
        step = pbw.wt(m, fc, 0) - pbw.wt(m, c, 0)
        assert np.array_equal(step, -m.rs.cartan[i - 1])
    ec = pbw.e(m, c, i)
    if ec is not None:
        assert np.array_equal(pbw.f(m, ec, i), c)


@given(model_and_datum(), st.data())
def test_eps_counts_raising_steps(md, data):
    m, c = md
    i = data.draw(st.sampled_from(list(m.rs.nodes)))
    k, x = 0, c
    while (x := pbw.e(m, x, i)) is not None:
        k += 1
    assert k == pbw.eps(m, c, i)


def test_round_trip_bulk(model, rng):
    for _ in range(10_000 // 3):
        c = rng.integers(0, 3, size=model.M)
        i = int(rng.integers(1, model.rs.rank + 1))
        fc = pbw.f(model, c, i)
        if fc is not None:
            assert np.array_equal(pbw.e(model, fc, i), c)


def test_f_moves_one_unit():
    m = get_model("E6r6")
    c = np.zeros(m.M, dtype=np.int64)
    c[m.index_of("0/01111")] = 1
    out = pbw.f(m, c, 1)
    assert out[m.index_of("0/11111")] == 1 and out.sum() == 1


def test_recorded_errata_are_not_alpha_i_arrows():
    m = get_model("E7r7")
    for entry in load_signatures()["errata"]:
        alpha = m.rs.simple_root(entry["i"])
        printed = entry["printed"] if entry["pair"] is None else [entry["printed"]]
        used = entry["used"] if entry["pair"] is None else [entry["used"]]
        assert any(
            not np.array_equal(np.array(m.rs.parse_root(a)) - m.rs.parse_root(b), alpha) for a, b in printed
        )
        for a, b in used:
            assert np.array_equal(np.array(m.rs.parse_root(a)) - m.rs.parse_root(b), alpha)
