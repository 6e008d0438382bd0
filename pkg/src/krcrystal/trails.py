"""The epsilon-star oracle from j0-trails through the minuscule crystal."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

import numpy as np

from . import _kernels
from .fixtures import load_trails
from .model import Model, get_model


def j0(model: Model) -> tuple[int, ...]:
    rs = model.rs
    return tuple(rs.star(i) for i in reversed(model.i0))


@dataclass(frozen=True)
class MinusculeCrystal:
    weights: tuple[tuple[int, ...], ...]
    index: dict
    f: np.ndarray  # f[i-1, b] = target node or -1
    highest: int
    lowest: int

    def __len__(self) -> int:
        return len(self.weights)

    def edges(self):
        for i in range(self.f.shape[0]):
            for b, t in enumerate(self.f[i]):
                if t >= 0:
                    yield b, int(t), i + 1


@cache
def build_minuscule(model: Model) -> MinusculeCrystal:
    rs = model.rs
    top = tuple(int(x) for x in rs.fundamental_weight(model.r))
    weights = tuple(rs.orbit(top))
    index = {w: k for k, w in enumerate(weights)}
    f = np.full((rs.rank, len(weights)), -1, dtype=np.int64)
    for b, w in enumerate(weights):
        for i in rs.nodes:
            if w[i - 1] == 1:
                f[i - 1, b] = index[tuple(int(x) for x in np.array(w) - rs.cartan[i - 1])]
    low = tuple(-x for x in rs.fundamental_weight(rs.star(model.r)))
    return MinusculeCrystal(weights, index, f, index[top], index[low])


@dataclass(frozen=True)
class TrailData:
    word: tuple[int, ...]
    succ: np.ndarray  # succ[k, b]
    gain_col: np.ndarray  # Lusztig index collected when step k is skipped
    start: int
    stop: int
    prefix: tuple[int, ...]
    prefix_end: int


def _node_after(cr: MinusculeCrystal, b: int, letter: int) -> int:
    return int(cr.f[letter - 1, b])


@cache
def trail_data(model: Model) -> TrailData:
    cr = build_minuscule(model)
    rs = model.rs
    word = j0(model)
    N, M = model.N, model.M
    succ = np.stack([cr.f[j - 1] for j in word]).astype(np.int64)
    gain = np.full(N, -1, dtype=np.int64)
    for step in range(N - M, N):
        # step index (0-based) step <-> position N - step in the convex order
        gain[step] = N - step - 1
    top = np.array(cr.weights[cr.highest])
    start = cr.index[tuple(int(x) for x in rs.reflect(model.r, top))]
    theta_w = tuple(int(x) for x in top - rs.root_to_weight(rs.highest_root))
    target = cr.index[theta_w]
    prefixes = _walks(succ[: N - M], start, target)
    if len(prefixes) != 1:
        raise RuntimeError(f"expected a unique prefix trail, found {len(prefixes)}")
    return TrailData(word, succ, gain, start, cr.lowest, prefixes[0], target)


def _walks(succ: np.ndarray, start: int, stop: int) -> list[tuple[int, ...]]:
    """All 0/1 step vectors walking from start to stop (depth-first)."""
    n = succ.shape[0]
    # reachability pruning from the end
    can = np.zeros((n + 1, succ.shape[1]), dtype=bool)
    can[n, stop] = True
    for k in range(n - 1, -1, -1):
        t = succ[k]
        can[k] = can[k + 1] | np.where(t >= 0, can[k + 1][np.maximum(t, 0)], False)
    out: list[tuple[int, ...]] = []
    path: list[int] = []

    def go(k: int, b: int) -> None:
        if k == n:
            out.append(tuple(path))
            return
        if can[k + 1, b]:
            path.append(0)
            go(k + 1, b)
            path.pop()
        t = succ[k, b]
        if t >= 0 and can[k + 1, t]:
            path.append(1)
            go(k + 1, int(t))
            path.pop()

    if can[0, start]:
        go(0, start)
    return out


def prefix_trail(model: Model) -> tuple[int, ...]:
    return trail_data(model).prefix


@cache
def enumerate_Tprime(model: Model) -> tuple[tuple[int, ...], ...]:
    """Last-M step vectors of the trails in T' (word order)."""
    td = trail_data(model)
    M = model.M
    return tuple(sorted(_walks(td.succ[model.N - M :], td.prefix_end, td.stop)))


def trail_array(model: Model, last: tuple[int, ...]) -> tuple[int, ...]:
    """Reindex a last-M step vector by convex-order position: entry k is d_{N-k+1}."""
    if len(last) != model.M:
        raise ValueError("trail vector has the wrong length")
    return tuple(reversed(last))


def D_J(model: Model) -> frozenset:
    return frozenset(trail_array(model, t) for t in enumerate_Tprime(model))


def fixture_arrays(model: Model, directory=None) -> set[tuple[int, ...]]:
    """Printed trails as convex-order arrays.

    A fixture written over a word that differs from the trail word by
    adjacent commutations is brought to the trail word first.
    """
    target = j0(model)[-model.M :]
    out = set()
    for word, rows in load_trails(model.key, directory).values():
        for row in rows:
            w, row = list(word), list(row)
            for k in range(len(w) - 1):
                if w[k] != target[k] and (w[k + 1], w[k]) == (target[k], target[k + 1]):
                    w[k], w[k + 1] = w[k + 1], w[k]
                    row[k], row[k + 1] = row[k + 1], row[k]
            if tuple(w) != target:
                raise ValueError("fixture word is not a commutation of the trail word")
            out.add(trail_array(model, tuple(row)))
    return out


def trail_norm(model: Model, c, last) -> int:
    arr = trail_array(model, last)
    return int(sum(ci for ci, d in zip(c, arr) if d == 0))


def eps_star_trails(model: Model, C, restricted: bool = False, use=None) -> np.ndarray | int:
    """epsilon_r^* by trail DP; accepts one datum or a batch of rows.

    With restricted=True only trails through the fixed prefix (the set T')
    are used.
    """
    td = trail_data(model)
    C = np.asarray(C, dtype=np.int64)
    single = C.ndim == 1
    if restricted:
        cut = model.N - model.M
        out = _kernels.trail_dp(C, td.succ[cut:], td.gain_col[cut:], td.prefix_end, td.stop, use)
    else:
        out = _kernels.trail_dp(C, td.succ, td.gain_col, td.start, td.stop, use)
    return int(out[0]) if single else out


def trail_nodes(model: Model, steps) -> list[int]:
    """Node sequence realised by a full step vector of length N."""
    td = trail_data(model)
    b = td.start
    seq = [b]
    for k, d in enumerate(steps):
        if d:
            b = int(td.succ[k, b])
            if b < 0:
                raise ValueError(f"step {k + 1} is not allowed")
        seq.append(b)
    return seq
