"""The three (type, node) models in scope and their shared word data."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache

import numpy as np

from .roots import RootSystem, build_root_system, roots_from_word
from .words import builtin_i0, builtin_iJ

MODEL_KEYS = ("E6r1", "E6r6", "E7r7")


@dataclass(frozen=True)
class Model:
    type_tag: str
    r: int
    rs: RootSystem = field(repr=False)
    i0: tuple[int, ...] = field(repr=False)
    roots: tuple[tuple[int, ...], ...] = field(repr=False)
    M: int = 0

    @property
    def key(self) -> str:
        return f"{self.type_tag}r{self.r}"

    @property
    def N(self) -> int:
        return len(self.i0)

    @property
    def J(self) -> tuple[int, ...]:
        return tuple(i for i in self.rs.nodes if i != self.r)

    @property
    def affine_nodes(self) -> tuple[int, ...]:
        return (0,) + tuple(self.rs.nodes)

    @property
    def jroots(self) -> tuple[tuple[int, ...], ...]:
        """Phi+(J) in convex order; these index the Lusztig datum."""
        return self.roots[: self.M]

    @property
    def theta_index(self) -> int:
        return self.jroots.index(self.rs.highest_root)

    @property
    def root_matrix(self) -> np.ndarray:
        """M x rank matrix of Phi+(J) coefficient vectors."""
        return np.array(self.jroots, dtype=np.int64)

    @property
    def weight_matrix(self) -> np.ndarray:
        """M x rank matrix of Phi+(J) roots in the fundamental-weight basis."""
        return self.root_matrix @ self.rs.cartan

    def index_of(self, root) -> int:
        if isinstance(root, str):
            root = self.rs.parse_root(root)
        return self.jroots.index(tuple(root))


@cache
def get_model(type_tag: str, r: int | None = None) -> Model:
    tag = type_tag.upper()
    if r is None and len(tag) > 2 and "R" in tag:
        tag, r_text = tag.split("R")
        r = int(r_text)
    if f"{tag}r{r}" not in MODEL_KEYS:
        raise ValueError(f"model {type_tag} r={r} is not in scope (choose from {', '.join(MODEL_KEYS)})")
    rs = build_root_system(tag)
    i0 = builtin_i0(tag, r)
    M = len(builtin_iJ(tag, r))
    return Model(tag, r, rs, i0, tuple(roots_from_word(rs, i0)), M)


def all_models() -> list[Model]:
    return [get_model(k) for k in MODEL_KEYS]
