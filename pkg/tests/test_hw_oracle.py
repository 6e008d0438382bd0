import numpy as np
import pytest

from krcrystal.hw import CrystalGraph, TensorPower, crystal_isomorphic, tensor_component
from krcrystal.model import get_model
from krcrystal.roots import build_root_system
from krcrystal.trails import build_minuscule


@pytest.mark.parametrize("key,s,size", [("E6r6", 1, 27), ("E7r7", 1, 56), ("E6r6", 2, 351), ("E6r1", 2, 351)])
def test_component_sizes(key, s, size):
    m = get_model(key)
    g = tensor_component(m, s)
    assert len(g) == size == m.rs.weyl_dim(s * m.rs.fundamental_weight(m.r))


def test_component_from_root_system():
    rs = build_root_system("E6")
    assert len(tensor_component(rs, 1, r=1)) == 27


def test_bad_s():
    with pytest.raises(ValueError):
        tensor_component(get_model("E6r6"), 0)


@pytest.mark.parametrize("key", ["E6r6", "E7r7"])
def test_arrows_lower_weight(key):
    m = get_model(key)
    g = tensor_component(m, 2)
    g.check_simple()
    for (u, i), v in g.arrows.items():
        step = np.subtract(g.weights[v], g.weights[u])
        assert np.array_equal(step, -m.rs.cartan[i - 1])
    assert g.sources() == [0]


def test_character_is_weyl_invariant():
    m = get_model("E6r6")
    g = tensor_component(m, 2)
    mult = {}
    for w in g.weights:
        mult[w] = mult.get(w, 0) + 1
    for i in m.rs.nodes:
        for w, k in mult.items():
            assert mult.get(tuple(int(x) for x in m.rs.reflect(i, w)), 0) == k


def test_string_weights_match(model):
    g = tensor_component(model, 2)
    assert g.string_weights(model.rs.rank) == g.weights


def test_tensor_rule_on_two_factors():
    m = get_model("E6r6")
    tp = TensorPower(build_minuscule(m))
    cr = tp.cr
    top = cr.highest
    # f_6 on u (x) u acts on the left factor
    once = tp.f((top, top), 6)
    assert once == (int(cr.f[5, top]), top)
    assert tp.e(once, 6) == (top, top)
    assert tp.f(once, 6) == (int(cr.f[5, top]), int(cr.f[5, top]))


def test_self_isomorphism_is_identity():
    g = tensor_component(get_model("E7r7"), 1)
    res = crystal_isomorphic(g, g)
    assert res and res.mapping == {k: k for k in range(len(g))}


def test_size_mismatch_fails():
    a = tensor_component(get_model("E6r6"), 1)
    b = tensor_component(get_model("E7r7"), 1)
    res = crystal_isomorphic(a, b)
    assert not res and "counts" in res.reason


def test_different_highest_weight_fails():
    a = tensor_component(get_model("E6r6"), 1)
    b = tensor_component(get_model("E6r1"), 1)
    assert not crystal_isomorphic(a, b)
    # same shape up to relabelling by the diagram flip
    flip = {1: 6, 6: 1, 3: 5, 5: 3}
    assert crystal_isomorphic(a.relabel(flip), b, weights=False)


def test_multiple_sources_refused():
    g = CrystalGraph([(0,), (0,)], {})
    res = crystal_isomorphic(g, g)
    assert not res and "sources" in res.reason


def test_corrupted_edge_detected():
    g = tensor_component(get_model("E6r6"), 1)
    h = CrystalGraph(list(g.weights), dict(g.arrows), list(g.names))
    (u, i), v = next(iter(h.arrows.items()))
    del h.arrows[(u, i)]
    assert not crystal_isomorphic(g, h)


def test_json_round_trip():
    g = tensor_component(get_model("E6r6"), 1)
    assert CrystalGraph.from_json(g.to_json()) == g
    assert g.to_dot().count("->") == len(g.arrows)


def test_reverse_twice():
    g = tensor_component(get_model("E6r6"), 1)
    assert g.reverse().reverse() == g
