"""Lusztig data on the nilradical roots and signature-rule crystal operators.

A datum is an integer vector c of length M indexed by the convex order of
the first M roots.  For i != r the operators follow the signature rule
with the sign blocks read off the arrangement arrows; for i = r they add
or remove one copy of the first root, which is alpha_r.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

import numpy as np

from .fixtures import load_signatures
from .model import Model
from .paths import delta_embedding

DOT = "·"


@dataclass(frozen=True)
class SignatureTemplate:
    i: int
    pairs: tuple[tuple[int, int], ...]  # (minus index, plus index), 0-based

    def roots(self, model: Model) -> list[tuple[str, str]]:
        rs = model.rs
        return [(rs.root_str(model.jroots[a]), rs.root_str(model.jroots[b])) for a, b in self.pairs]


def _check_index(model: Model, i: int) -> None:
    if i not in model.J:
        raise ValueError(f"node {i} is not in J for {model.key}")


@cache
def sigma_template(model: Model, i: int) -> SignatureTemplate:
    """Arrow pairs beta -> beta + alpha_i, read north-west to south-east."""
    _check_index(model, i)
    emb = delta_embedding(model)
    alpha = model.rs.simple_root(i)
    pairs = []
    for plus, beta in enumerate(model.jroots):
        target = tuple(int(x) for x in np.array(beta) + alpha)
        if target in model.jroots:
            pairs.append((model.jroots.index(target), plus))
    # initial points of the arrows, top row first, left to right within a row
    pairs.sort(key=lambda p: (emb.dots[p[1]][0], -emb.dots[p[1]][1]))
    return SignatureTemplate(i, tuple(pairs))


def fixture_template(model: Model, i: int, data: dict | None = None) -> SignatureTemplate:
    _check_index(model, i)
    data = data if data is not None else load_signatures()
    rows = data[model.key][str(i)]
    return SignatureTemplate(i, tuple((model.index_of(a), model.index_of(b)) for a, b in rows))


def template_mismatches(model: Model, data: dict | None = None) -> list[int]:
    data = data if data is not None else load_signatures()
    return [i for i in model.J if sigma_template(model, i) != fixture_template(model, i, data)]


def reduce_signature(seq) -> list[str]:
    """Cancel (+, -) pairs with only dots between them until none is left."""
    out = list(seq)
    opened: list[int] = []
    for k, s in enumerate(out):
        if s == "+":
            opened.append(k)
        elif s == "-" and opened:
            out[opened.pop()] = DOT
            out[k] = DOT
    return out


def signature(model: Model, c, i: int) -> list[str]:
    seq: list[str] = []
    for minus, plus in sigma_template(model, i).pairs:
        seq += ["-"] * int(c[minus]) + ["+"] * int(c[plus])
    return seq


def _reduced_blocks(model: Model, c, i: int):
    """Uncanceled signs per block: (list of (pair, minus count), list of (pair, plus count))."""
    minus_left: list[list[int]] = []
    plus_open: list[list[int]] = []
    for s, (minus, plus) in enumerate(sigma_template(model, i).pairs):
        m = int(c[minus])
        while m and plus_open:
            take = min(m, plus_open[-1][1])
            plus_open[-1][1] -= take
            m -= take
            if plus_open[-1][1] == 0:
                plus_open.pop()
        if m:
            minus_left.append([s, m])
        if int(c[plus]):
            plus_open.append([s, int(c[plus])])
    return minus_left, plus_open


def _as_array(c) -> np.ndarray:
    return np.array(c, dtype=np.int64)


def f(model: Model, c, i: int):
    """Lowering operator on B^J; None when the result leaves B^J."""
    c = _as_array(c)
    if i == model.r:
        c[0] += 1
        return c
    _, plus_open = _reduced_blocks(model, c, i)
    if not plus_open:
        return None
    minus, plus = sigma_template(model, i).pairs[plus_open[0][0]]
    c[plus] -= 1
    c[minus] += 1
    return c


def e(model: Model, c, i: int):
    """Raising operator on B^J; None when it is undefined."""
    c = _as_array(c)
    if i == model.r:
        if c[0] == 0:
            return None
        c[0] -= 1
        return c
    minus_left, _ = _reduced_blocks(model, c, i)
    if not minus_left:
        return None
    minus, plus = sigma_template(model, i).pairs[minus_left[-1][0]]
    c[minus] -= 1
    c[plus] += 1
    return c


def eps(model: Model, c, i: int) -> int:
    if i == model.r:
        return int(c[0])
    minus_left, _ = _reduced_blocks(model, c, i)
    return sum(m for _, m in minus_left)


def wt(model: Model, c, s: int) -> np.ndarray:
    """s * varpi_r minus the weight of c, in the fundamental basis."""
    top = s * model.rs.fundamental_weight(model.r)
    return top - _as_array(c) @ model.weight_matrix


def phi(model: Model, c, i: int, s: int) -> int:
    return eps(model, c, i) + int(wt(model, c, s)[i - 1])
