import numpy as np
import pytest

from krcrystal import _kernels
from krcrystal.fixtures import load_trails, parse_trail_lines
from krcrystal.model import MODEL_KEYS, get_model
from krcrystal.roots import build_root_system
from krcrystal.trails import (
    D_J,
    build_minuscule,
    enumerate_Tprime,
    eps_star_trails,
    j0,
    prefix_trail,
    trail_array,
    trail_data,
    trail_nodes,
)


def test_j0_e6():
    m = get_model("E6r6")
    w = j0(m)
    assert len(w) == m.N == 36
    assert w[-16:] == (6, 5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1)


def test_j0_e7_is_reverse():
    m = get_model("E7r7")
    assert j0(m) == tuple(reversed(m.i0))


@pytest.mark.parametrize("key,size", [("E6r6", 27), ("E6r1", 27), ("E7r7", 56)])
def test_minuscule_crystal(key, size):
    m = get_model(key)
    cr = build_minuscule(m)
    assert len(cr) == size
    assert cr.weights[cr.highest] == tuple(m.rs.fundamental_weight(m.r))
    targets = [t for _, t, _ in cr.edges()]
    sources = set(range(size)) - set(targets)
    sinks = set(range(size)) - {b for b, _, _ in cr.edges()}
    assert sources == {cr.highest} and sinks == {cr.lowest}
    # strings have length at most one
    for i in range(cr.f.shape[0]):
        hit = cr.f[i][cr.f[i] >= 0]
        assert (cr.f[i][hit] == -1).all()


@pytest.mark.parametrize("key", MODEL_KEYS)
def test_prefix_is_unique_and_telescopes(key):
    m = get_model(key)
    rs = m.rs
    td = trail_data(m)
    word = td.word[: m.N - m.M]
    total = sum(d * rs.simple_root(j) for d, j in zip(prefix_trail(m), word))
    assert np.array_equal(total, np.array(rs.highest_root) - rs.simple_root(m.r))
    cr = build_minuscule(m)
    want = rs.fundamental_weight(m.r) - rs.root_to_weight(rs.highest_root)
    assert cr.weights[td.prefix_end] == tuple(want)


@pytest.mark.parametrize("key,count", [("E6r6", 12), ("E6r1", 12), ("E7r7", 78)])
def test_Tprime_sizes(key, count):
    assert len(enumerate_Tprime(get_model(key))) == count


@pytest.mark.parametrize("key", MODEL_KEYS)
def test_full_trails_telescope(key):
    m = get_model(key)
    rs = m.rs
    pre = prefix_trail(m)
    top = rs.fundamental_weight(m.r)
    span = rs.reflect(m.r, top) - (-rs.fundamental_weight(rs.star(m.r)))
    for last in enumerate_Tprime(m):
        steps = pre + last
        total = sum(d * rs.root_to_weight(rs.simple_root(j)) for d, j in zip(steps, j0(m)))
        assert np.array_equal(total, span)
        assert trail_nodes(m, steps)[-1] == build_minuscule(m).lowest


def test_e6_fixture_exact():
    m = get_model("E6r6")
    (word, rows), = load_trails("E6r6").values()
    assert word == j0(m)[-16:]
    assert set(rows) == set(enumerate_Tprime(m))
    assert (1, 1, 1, 1, 1) + (0,) * 11 in rows


def test_e7_fixture_is_a_proper_subset():
    # two genuine trails are absent from the printed lists
    m = get_model("E7r7")
    printed = set()
    for word, rows in load_trails("E7r7").values():
        assert word == j0(m)[-27:]
        printed |= set(rows)
    ours = set(enumerate_Tprime(m))
    assert len(printed) == 76 and printed < ours
    extra = ours - printed
    assert len(extra) == 2
    for last in extra:
        nodes = trail_nodes(m, prefix_trail(m) + last)
        assert nodes[-1] == build_minuscule(m).lowest
        letters = "".join(str(j) for d, j in zip(last, j0(m)[-27:]) if d)
        assert letters in ("7654234567", "7654324567")


def test_example_array_e7():
    m = get_model("E7r7")
    rs = m.rs
    ones = set(range(4)) | {m.index_of(x) for x in ("1/111111", "1/122111", "1/123221")} | {24, 25, 26}
    arr = tuple(int(k in ones) for k in range(m.M))
    assert arr in D_J(m)


def test_trail_array_length_checked():
    with pytest.raises(ValueError):
        trail_array(get_model("E6r6"), (0, 1))


@pytest.mark.parametrize("key", MODEL_KEYS)
def test_small_values(key):
    m = get_model(key)
    z = np.zeros(m.M, dtype=np.int64)
    assert eps_star_trails(m, z) == 0
    z[0] = 1
    assert eps_star_trails(m, z) == 1


@pytest.mark.parametrize("key", MODEL_KEYS)
def test_restricted_maximum_agrees(key):
    m = get_model(key)
    C = np.random.default_rng(5).integers(0, 5, size=(20_000, m.M))
    assert np.array_equal(eps_star_trails(m, C), eps_star_trails(m, C, restricted=True))


def test_dp_matches_explicit_maximum():
    m = get_model("E6r6")
    C = np.random.default_rng(9).integers(0, 4, size=(300, m.M))
    arrays = np.array([trail_array(m, t) for t in enumerate_Tprime(m)])
    brute = (C @ (1 - arrays).T).max(axis=1)
    assert np.array_equal(eps_star_trails(m, C), brute)


def test_numpy_backend_matches_numba(monkeypatch):
    m = get_model("E7r7")
    C = np.random.default_rng(2).integers(0, 5, size=(200, m.M))
    a = eps_star_trails(m, C, use="numba")
    monkeypatch.setenv("KRCRYSTAL_BACKEND", "numpy")
    assert _kernels.backend() == "numpy"
    assert np.array_equal(eps_star_trails(m, C), a)


def test_bad_backend(monkeypatch):
    monkeypatch.setenv("KRCRYSTAL_BACKEND", "cuda")
    with pytest.raises(ValueError):
        _kernels.backend()


def test_fixture_parser_rejects_garbage():
    with pytest.raises(ValueError):
        parse_trail_lines(["word: 1 2", "1x"])
    with pytest.raises(ValueError):
        parse_trail_lines(["word: 1 2 3", "10"])
    assert parse_trail_lines(["# c", "", "word: 1 2", "10"]) == ((1, 2), [(1, 0)])


def test_e6_r1_fixture_is_flipped():
    (word, rows), = load_trails("E6r1").values()
    m = get_model("E6r1")
    assert word == j0(m)[-16:]
    assert set(rows) == set(enumerate_Tprime(m))


def test_fixture_directory_override(tmp_path, monkeypatch):
    monkeypatch.setenv("KRCRYSTAL_FIXTURES", str(tmp_path / "missing"))
    with pytest.raises(FileNotFoundError):
        load_trails("E6r6")


def test_unknown_type():
    with pytest.raises(ValueError):
        build_root_system("F4")
