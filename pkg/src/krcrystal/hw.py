"""Highest-weight crystals from tensor powers, and a labelled-graph isomorphism test.

The tensor rule is Kashiwara's: f_i acts on the left factor of b1 (x) b2
exactly when phi_i(b1) > eps_i(b2).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .model import Model
from .roots import RootSystem
from .trails import MinusculeCrystal, build_minuscule


@dataclass
class CrystalGraph:
    """Nodes 0..n-1 with weights and f-arrows keyed by (node, label)."""

    weights: list[tuple[int, ...]]
    arrows: dict[tuple[int, int], int] = field(default_factory=dict)
    names: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def labels(self) -> list[int]:
        return sorted({lab for _, lab in self.arrows})

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((u, v, lab) for (u, lab), v in self.arrows.items())

    def sources(self) -> list[int]:
        hit = set(self.arrows.values())
        return [u for u in range(len(self)) if u not in hit]

    def check_simple(self) -> None:
        """Each label has in- and out-degree at most one at every node."""
        seen = set()
        for (u, lab), v in self.arrows.items():
            if (v, lab) in seen:
                raise ValueError(f"two {lab}-arrows enter node {v}")
            seen.add((v, lab))

    def restrict(self, labels) -> "CrystalGraph":
        keep = set(labels)
        return CrystalGraph(list(self.weights), {k: v for k, v in self.arrows.items() if k[1] in keep}, list(self.names))

    def relabel(self, mapping: dict[int, int]) -> "CrystalGraph":
        return CrystalGraph(list(self.weights), {(u, mapping.get(lab, lab)): v for (u, lab), v in self.arrows.items()}, list(self.names))

    def reverse(self) -> "CrystalGraph":
        return CrystalGraph(list(self.weights), {(v, lab): u for (u, lab), v in self.arrows.items()}, list(self.names))

    def string_weights(self, rank: int) -> list[tuple[int, ...]]:
        """phi_i - eps_i for labels 1..rank, read from string lengths."""
        back = {(v, lab): u for (u, lab), v in self.arrows.items()}
        out = []
        for u in range(len(self)):
            w = []
            for i in range(1, rank + 1):
                up = down = 0
                x = u
                while (x, i) in self.arrows:
                    x = self.arrows[(x, i)]
                    down += 1
                x = u
                while (x, i) in back:
                    x = back[(x, i)]
                    up += 1
                w.append(down - up)
            out.append(tuple(w))
        return out

    def to_json(self) -> str:
        nodes = [
            {"id": k, "c": list(self.names[k]) if self.names else None, "wt": list(self.weights[k])}
            for k in range(len(self))
        ]
        edges = [{"src": u, "dst": v, "label": lab} for u, v, lab in self.edges()]
        return json.dumps({"nodes": nodes, "edges": edges}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "CrystalGraph":
        data = json.loads(text)
        nodes = sorted(data["nodes"], key=lambda n: n["id"])
        weights = [tuple(n["wt"]) for n in nodes]
        names = [tuple(n["c"]) for n in nodes] if nodes and nodes[0].get("c") is not None else []
        arrows = {(e["src"], e["label"]): e["dst"] for e in data["edges"]}
        return cls(weights, arrows, names)

    def to_dot(self) -> str:
        palette = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta"]
        lines = ["digraph crystal {"]
        for k in range(len(self)):
            label = "".join(map(str, self.names[k])) if self.names else str(k)
            lines.append(f'  n{k} [label="{label}"];')
        for u, v, lab in self.edges():
            lines.append(f'  n{u} -> n{v} [label="{lab}", color={palette[lab % len(palette)]}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CrystalGraph)
            and self.weights == other.weights
            and self.arrows == other.arrows
            and list(self.names) == list(other.names)
        )


# ------------------------------------------------------------- tensor powers


def _minuscule_for(rs: RootSystem, r: int) -> MinusculeCrystal:
    from .model import get_model

    return build_minuscule(get_model(rs.type_tag, r))


def _reduce(seq):
    """Cancel (+, -) pairs; returns positions of surviving + and -."""
    opened: list[int] = []
    minus: list[int] = []
    for sign, k in seq:
        if sign == "+":
            opened.append(k)
        elif opened:
            opened.pop()
        else:
            minus.append(k)
    return opened, minus


class TensorPower:
    """b_1 (x) ... (x) b_s over a minuscule crystal.

    Each factor contributes eps_i minus signs then phi_i plus signs; after
    cancellation f_i acts at the leftmost plus and e_i at the rightmost minus,
    which is the Kashiwara rule applied factor by factor.
    """

    def __init__(self, cr: MinusculeCrystal):
        self.cr = cr
        w = np.array(cr.weights, dtype=np.int64)
        self.w = w
        self.plus = (w == 1).astype(np.int64)
        self.minus = (w == -1).astype(np.int64)
        rank, n = cr.f.shape
        self.e_table = np.full((rank, n), -1, dtype=np.int64)
        for i in range(rank):
            for b in range(n):
                t = cr.f[i, b]
                if t >= 0:
                    self.e_table[i, t] = b

    def _signs(self, t, i):
        seq = []
        for k, b in enumerate(t):
            seq += [("-", k)] * int(self.minus[b, i - 1]) + [("+", k)] * int(self.plus[b, i - 1])
        return _reduce(seq)

    def f(self, t, i):
        plus, _ = self._signs(t, i)
        if not plus:
            return None
        k = plus[0]
        return t[:k] + (int(self.cr.f[i - 1, t[k]]),) + t[k + 1 :]

    def e(self, t, i):
        _, minus = self._signs(t, i)
        if not minus:
            return None
        k = minus[-1]
        return t[:k] + (int(self.e_table[i - 1, t[k]]),) + t[k + 1 :]

    def weight(self, t) -> tuple[int, ...]:
        return tuple(int(x) for x in self.w[list(t)].sum(axis=0))


def tensor_component(source, s: int, r: int | None = None) -> CrystalGraph:
    """Component of u^{(x)s} in B(varpi_r)^{(x)s}; accepts a Model or (RootSystem, r)."""
    if s < 1:
        raise ValueError("s must be positive")
    if isinstance(source, Model):
        cr = build_minuscule(source)
    else:
        cr = _minuscule_for(source, r)
    tp = TensorPower(cr)
    rank = cr.f.shape[0]
    top = (cr.highest,) * s
    index = {top: 0}
    order = [top]
    arrows: dict[tuple[int, int], int] = {}
    queue = deque([top])
    while queue:
        t = queue.popleft()
        for i in range(1, rank + 1):
            for op, forward in ((tp.f, True), (tp.e, False)):
                u = op(t, i)
                if u is None:
                    continue
                if u not in index:
                    index[u] = len(order)
                    order.append(u)
                    queue.append(u)
                if forward:
                    arrows[(index[t], i)] = index[u]
    return CrystalGraph([tp.weight(t) for t in order], arrows, order)


# ---------------------------------------------------------------- isomorphism


@dataclass(frozen=True)
class IsoResult:
    ok: bool
    mapping: dict | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def crystal_isomorphic(g1: CrystalGraph, g2: CrystalGraph, weights: bool = True) -> IsoResult:
    """Match the unique sources and walk both graphs arrow by arrow.

    With weights=True the node weights must agree along the way; pass False
    when the graphs carry weights for different index sets.
    """
    if len(g1) != len(g2):
        return IsoResult(False, reason=f"node counts differ ({len(g1)} vs {len(g2)})")
    s1, s2 = g1.sources(), g2.sources()
    if len(s1) != 1 or len(s2) != 1:
        return IsoResult(False, reason=f"need unique sources, found {len(s1)} and {len(s2)}")
    if weights and g1.weights[s1[0]] != g2.weights[s2[0]]:
        return IsoResult(False, reason="highest weights differ")
    back1 = {(v, lab): u for (u, lab), v in g1.arrows.items()}
    back2 = {(v, lab): u for (u, lab), v in g2.arrows.items()}
    labels = sorted(set(g1.labels) | set(g2.labels))
    fwd = {s1[0]: s2[0]}
    used = {s2[0]}
    queue = deque([s1[0]])
    while queue:
        u = queue.popleft()
        v = fwd[u]
        for lab in labels:
            for a1, a2, tag in ((g1.arrows, g2.arrows, "f"), (back1, back2, "e")):
                x, y = a1.get((u, lab)), a2.get((v, lab))
                if (x is None) != (y is None):
                    return IsoResult(False, reason=f"{tag}_{lab} defined on one side only at node {u}")
                if x is None:
                    continue
                if x in fwd:
                    if fwd[x] != y:
                        return IsoResult(False, reason=f"conflicting images for node {x}")
                    continue
                if y in used:
                    return IsoResult(False, reason=f"node {y} hit twice")
                if weights and g1.weights[x] != g2.weights[y]:
                    return IsoResult(False, reason=f"weight mismatch at node {x}")
                fwd[x] = y
                used.add(y)
                queue.append(x)
    if len(fwd) != len(g1):
        return IsoResult(False, reason="graph is not connected from its source")
    if len(g1.arrows) != len(g2.arrows):
        return IsoResult(False, reason="arrow counts differ")
    return IsoResult(True, fwd)
