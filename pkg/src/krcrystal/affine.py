"""The affine crystal on {c : eps_r^*(c) <= s} and its checks.

Weights are classical (level zero): <wt, h_0> is taken as -<wt, theta^vee>
and delta is dropped.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import pbw
from .hw import CrystalGraph, crystal_isomorphic, tensor_component
from .model import Model, get_model
from .paths import eps_star_paths
from .trails import eps_star_trails

# label of the affine subdiagram -> label of I, from the dual correspondence
DUAL_RELABEL = {
    "E6r6": {0: 6, 2: 5, 5: 2},
    "E6r1": {0: 1, 2: 3, 3: 2},
    "E7r7": {0: 7, 1: 6, 6: 1, 3: 5, 5: 3},
}


class CountMismatch(RuntimeError):
    pass


@dataclass
class KRCrystal:
    model: Model
    s: int
    elements: list[tuple[int, ...]]
    f: dict[int, np.ndarray]  # f[label][k] -> index or -1
    audit: bool = False
    truncated: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def labels(self) -> tuple[int, ...]:
        return self.model.affine_nodes

    def e_table(self, label: int) -> np.ndarray:
        out = np.full(len(self), -1, dtype=np.int64)
        for k, t in enumerate(self.f[label]):
            if t >= 0:
                out[t] = k
        return out

    def wt(self, k: int) -> np.ndarray:
        return pbw.wt(self.model, self.elements[k], self.s)

    def pairing(self, k: int, label: int) -> int:
        w = self.wt(k)
        if label == 0:
            return -int(np.array(self.model.rs.highest_root) @ w)
        return int(w[label - 1])

    def graph(self, labels=None) -> CrystalGraph:
        keep = self.labels if labels is None else tuple(labels)
        arrows = {}
        for lab in keep:
            for k, t in enumerate(self.f[lab]):
                if t >= 0:
                    arrows[(k, lab)] = int(t)
        weights = [tuple(int(x) for x in self.wt(k)) for k in range(len(self))]
        return CrystalGraph(weights, arrows, list(self.elements))


def _member(model: Model, s: int, audit: bool):
    cache: dict[tuple[int, ...], bool] = {}

    def test(c) -> bool:
        key = tuple(int(x) for x in c)
        if key not in cache:
            val = eps_star_trails(model, key) if audit else eps_star_paths(model, key)
            cache[key] = val <= s
        return cache[key]

    return test


def raw_f(model: Model, c, label: int):
    """Untruncated f on B^J: the 0-arrow removes one copy of theta."""
    if label == 0:
        th = model.theta_index
        if c[th] == 0:
            return None
        out = np.array(c, dtype=np.int64)
        out[th] -= 1
        return out
    return pbw.f(model, c, label)


def raw_e(model: Model, c, label: int):
    if label == 0:
        out = np.array(c, dtype=np.int64)
        out[model.theta_index] += 1
        return out
    return pbw.e(model, c, label)


def build_KR(model: Model, s: int, audit: bool = False, check_count: bool = True) -> KRCrystal:
    """Breadth-first search from c = 0 under all e_i, f_i, truncated to eps_r^* <= s."""
    if s < 1:
        raise ValueError("s must be positive")
    inside = _member(model, s, audit)
    zero = (0,) * model.M
    index = {zero: 0}
    order = [zero]
    arrows: dict[int, dict[int, int]] = {lab: {} for lab in model.affine_nodes}
    truncated = {lab: 0 for lab in model.affine_nodes}
    queue = deque([zero])
    while queue:
        c = queue.popleft()
        for lab in model.affine_nodes:
            for op, forward in ((raw_f, True), (raw_e, False)):
                d = op(model, c, lab)
                if d is None:
                    continue
                d = tuple(int(x) for x in d)
                if not inside(d):
                    truncated[lab] += 1
                    continue
                if d not in index:
                    index[d] = len(order)
                    order.append(d)
                    queue.append(d)
                if forward:
                    arrows[lab][index[c]] = index[d]
                else:
                    arrows[lab][index[d]] = index[c]
    # deterministic order: lexicographic Lusztig data, zero first
    perm = sorted(range(len(order)), key=lambda k: order[k])
    new = {old: k for k, old in enumerate(perm)}
    f = {}
    for lab, table in arrows.items():
        arr = np.full(len(order), -1, dtype=np.int64)
        for u, v in table.items():
            arr[new[u]] = new[v]
        f[lab] = arr
    kr = KRCrystal(model, s, [order[k] for k in perm], f, audit, truncated)
    if check_count:
        want = model.rs.weyl_dim(s * model.rs.fundamental_weight(model.r))
        if len(kr) != want:
            raise CountMismatch(f"{model.key} s={s}: {len(kr)} elements, expected {want}")
    return kr


# ----------------------------------------------------------- 0-operators


def f0(kr: KRCrystal, c):
    return raw_f(kr.model, c, 0)


def e0(kr: KRCrystal, c):
    d = raw_e(kr.model, c, 0)
    return d if _member(kr.model, kr.s, kr.audit)(d) else None


def phi0(model: Model, c) -> int:
    return int(c[model.theta_index])


def eps0(model: Model, c, s: int) -> int:
    w = pbw.wt(model, c, s)
    return phi0(model, c) + int(np.array(model.rs.highest_root) @ w)


def eps_formula(kr: KRCrystal, c, label: int) -> int:
    if label == 0:
        return eps0(kr.model, c, kr.s)
    return pbw.eps(kr.model, c, label)


# ------------------------------------------------------------ verification


def verify_regular(kr: KRCrystal, f_tables: dict | None = None) -> list[str]:
    """String-axiom violations over every element and label (empty if regular)."""
    f = f_tables if f_tables is not None else kr.f
    model = kr.model
    out: list[str] = []
    for lab in kr.labels:
        fw = f[lab]
        bw = np.full(len(kr), -1, dtype=np.int64)
        for k, t in enumerate(fw):
            if t >= 0:
                if bw[t] >= 0:
                    out.append(f"label {lab}: two arrows into {t}")
                bw[t] = k
        for k in range(len(kr)):
            up = down = 0
            x = k
            while fw[x] >= 0 and down <= len(kr):
                x = fw[x]
                down += 1
            x = k
            while bw[x] >= 0 and up <= len(kr):
                x = bw[x]
                up += 1
            if down > len(kr) or up > len(kr):
                out.append(f"label {lab}: infinite string through {k}")
                continue
            if down - up != kr.pairing(k, lab):
                out.append(f"label {lab}, element {kr.elements[k]}: phi - eps = {down - up}, pairing {kr.pairing(k, lab)}")
            if up != eps_formula(kr, kr.elements[k], lab):
                out.append(f"label {lab}, element {kr.elements[k]}: eps {up} vs formula")
            t = fw[k]
            if t >= 0:
                step = kr.wt(int(t)) - kr.wt(k)
                want = (
                    np.array(model.rs.highest_root) @ model.rs.cartan
                    if lab == 0
                    else -model.rs.cartan[lab - 1]
                )
                if not np.array_equal(step, want):
                    out.append(f"label {lab}: weight step wrong at {kr.elements[k]}")
    return out


def dual_relabel_check(kr: KRCrystal, reverse: bool = True, target: int | None = None):
    """Drop label r, relabel by the dual correspondence and compare with B(s varpi).

    Reversed arrows are compared with B(s varpi_r); unreversed arrows with
    B(s varpi_{r*}).  `target` overrides the node of the comparison crystal.
    Returns the isomorphism result.
    """
    model = kr.model
    mapping = DUAL_RELABEL[model.key]
    full = {lab: mapping.get(lab, lab) for lab in model.affine_nodes if lab != model.r}
    g = kr.graph([lab for lab in model.affine_nodes if lab != model.r]).relabel(full)
    if reverse:
        g = g.reverse()
        target_r = model.r
    else:
        target_r = model.rs.star(model.r)
    if target is not None:
        target_r = target
    g.weights = g.string_weights(model.rs.rank)
    return crystal_isomorphic(g, tensor_component(get_model(model.type_tag, target_r), kr.s))


def classical_check(kr: KRCrystal):
    """B^{J,s} (x) T with labels in I against the tensor-power component."""
    g = kr.graph(kr.model.rs.nodes)
    return crystal_isomorphic(g, tensor_component(kr.model, kr.s))


def export(kr: KRCrystal, fmt: str = "json") -> str:
    if len(kr) == 0:
        raise ValueError("nothing to export")
    g = kr.graph()
    if fmt == "json":
        return g.to_json()
    if fmt == "dot":
        return g.to_dot()
    raise ValueError(f"unknown format {fmt!r}")


def import_json(text: str) -> CrystalGraph:
    return CrystalGraph.from_json(text)
