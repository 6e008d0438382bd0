"""Simply-laced root systems with Bourbaki node labels.

Roots are integer coefficient vectors over the simple roots; weights are
integer vectors in the fundamental-weight basis.  Node labels are 1-based
throughout the public API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

SUPPORTED = ("A", "D", "E6", "E7")


def _edges(type_tag: str, rank: int) -> list[tuple[int, int]]:
    if type_tag == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if type_tag == "D":
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    # E_n: chain 1-3-4-5-...-n with 2 hanging off 4
    chain = [1] + list(range(3, rank + 1))
    return [(a, b) for a, b in zip(chain, chain[1:])] + [(2, 4)]


def cartan_matrix(type_tag: str, rank: int) -> np.ndarray:
    a = 2 * np.eye(rank, dtype=np.int64)
    for i, j in _edges(type_tag, rank):
        a[i - 1, j - 1] = a[j - 1, i - 1] = -1
    return a


def _parse(type_tag: str, rank: int | None) -> tuple[str, int]:
    tag = type_tag.upper().replace("_", "")
    if tag in ("E6", "E7"):
        n = int(tag[1])
        if rank is not None and rank != n:
            raise ValueError(f"{tag} has rank {n}, not {rank}")
        return tag, n
    if tag[:1] in ("A", "D") and len(tag) > 1:
        rank_from_tag = int(tag[1:])
        if rank is not None and rank != rank_from_tag:
            raise ValueError(f"rank mismatch for {type_tag}")
        rank = rank_from_tag
        tag = tag[0]
    if tag == "A" and rank is not None and rank >= 1:
        return "A", rank
    if tag == "D" and rank is not None and rank >= 4:
        return "D", rank
    raise ValueError(f"unsupported root system {type_tag!r} (rank {rank})")


@dataclass(frozen=True)
class RootSystem:
    type_tag: str
    rank: int
    cartan: np.ndarray = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        return self.type_tag if self.type_tag.startswith("E") else f"{self.type_tag}{self.rank}"

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def simple_root(self, i: int) -> np.ndarray:
        v = np.zeros(self.rank, dtype=np.int64)
        v[i - 1] = 1
        return v

    def fundamental_weight(self, i: int) -> np.ndarray:
        return self.simple_root(i)

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """All positive roots, sorted by height and then lexicographically."""
        found = {tuple(self.simple_root(i)) for i in self.nodes}
        frontier = list(found)
        while frontier:
            nxt = []
            for beta in frontier:
                b = np.array(beta)
                for i in self.nodes:
                    # simply laced: beta + alpha_i is a root iff <beta, h_i> = -1
                    if self.root_pairing(b, i) == -1:
                        gamma = tuple(b + self.simple_root(i))
                        if gamma not in found:
                            found.add(gamma)
                            nxt.append(gamma)
            frontier = nxt
        return tuple(sorted(found, key=lambda r: (sum(r), r)))

    @cached_property
    def root_index(self) -> dict[tuple[int, ...], int]:
        return {r: k for k, r in enumerate(self.positive_roots)}

    def is_positive_root(self, coeffs) -> bool:
        return tuple(int(x) for x in coeffs) in self.root_index

    def root_to_weight(self, coeffs) -> np.ndarray:
        return self.cartan @ np.asarray(coeffs, dtype=np.int64)

    def weight_to_root(self, weight) -> np.ndarray:
        """Inverse of root_to_weight; raises if the weight is not in the root lattice."""
        sol = np.linalg.solve(self.cartan.astype(float), np.asarray(weight, dtype=float))
        out = np.rint(sol).astype(np.int64)
        if not np.array_equal(self.cartan @ out, np.asarray(weight)):
            raise ValueError("weight is not in the root lattice")
        return out

    def root_pairing(self, coeffs, i: int) -> int:
        return int(self.cartan[i - 1] @ np.asarray(coeffs, dtype=np.int64))

    def pairing(self, weight, i: int) -> int:
        return int(np.asarray(weight)[i - 1])

    def reflect(self, i: int, weight) -> np.ndarray:
        w = np.array(weight, dtype=np.int64)
        return w - w[i - 1] * self.cartan[i - 1]

    def reflect_root(self, i: int, coeffs) -> np.ndarray:
        c = np.array(coeffs, dtype=np.int64)
        c[i - 1] -= self.root_pairing(c, i)
        return c

    @cached_property
    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots, key=sum)

    @cached_property
    def rho(self) -> np.ndarray:
        return np.ones(self.rank, dtype=np.int64)

    def weyl_dim(self, weight) -> int:
        lam = np.asarray(weight, dtype=np.int64)
        if len(lam) != self.rank or (lam < 0).any():
            raise ValueError("weyl_dim needs a dominant weight")
        num, den = Fraction(1), Fraction(1)
        # simply laced: <mu, beta^vee> = sum_i coeff_i * mu_i in the fundamental basis
        for beta in self.positive_roots:
            b = np.array(beta)
            num *= int(b @ (lam + self.rho))
            den *= int(b @ self.rho)
        dim = num / den
        assert dim.denominator == 1
        return int(dim)

    def star(self, i: int) -> int:
        """The node i* with w_0(alpha_i) = -alpha_{i*}."""
        if self.type_tag == "E6":
            return {1: 6, 3: 5, 5: 3, 6: 1}.get(i, i)
        if self.type_tag == "A":
            return self.rank + 1 - i
        if self.type_tag == "D" and self.rank % 2 == 1 and i >= self.rank - 1:
            return 2 * self.rank - 1 - i
        return i

    def orbit(self, weight) -> list[tuple[int, ...]]:
        """Weyl orbit of a weight, by breadth-first reflection."""
        start = tuple(int(x) for x in weight)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for i in self.nodes:
                    if w[i - 1] != 0:
                        v = tuple(int(x) for x in self.reflect(i, w))
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
            frontier = nxt
        return sorted(seen)

    def root_str(self, coeffs) -> str:
        c = [int(x) for x in coeffs]
        if self.type_tag.startswith("E"):
            rest = [c[0]] + c[2:]
            return f"{c[1]}/" + "".join(map(str, rest))
        return "".join(map(str, c))

    def parse_root(self, text: str) -> tuple[int, ...]:
        """Inverse of root_str for E types: 'b/acdef' means b on node 2."""
        if "/" in text:
            b, rest = text.split("/")
            digits = [int(x) for x in rest]
            c = [digits[0], int(b)] + digits[1:]
        else:
            c = [int(x) for x in text]
        if len(c) != self.rank:
            raise ValueError(f"bad root string {text!r}")
        return tuple(c)


_CACHE: dict[tuple[str, int], RootSystem] = {}


def build_root_system(type_tag: str, rank: int | None = None) -> RootSystem:
    tag, n = _parse(type_tag, rank)
    key = (tag, n)
    if key not in _CACHE:
        cartan = cartan_matrix(tag, n)
        cartan.setflags(write=False)
        _CACHE[key] = RootSystem(tag, n, cartan)
    return _CACHE[key]


def is_reduced(rs: RootSystem, word) -> bool:
    return word_length(rs, word) == len(word)


def roots_from_word(rs: RootSystem, word) -> list[tuple[int, ...]]:
    """beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}); rejects non-reduced words."""
    out = []
    for k, i in enumerate(word):
        if not 1 <= i <= rs.rank:
            raise ValueError(f"letter {i} out of range")
        beta = rs.simple_root(i)
        for j in reversed(word[:k]):
            beta = rs.reflect_root(j, beta)
        t = tuple(int(x) for x in beta)
        if t not in rs.root_index:
            raise ValueError(f"word is not reduced (position {k + 1})")
        out.append(t)
    if len(set(out)) != len(out):
        raise ValueError("word is not reduced (repeated root)")
    return out


def weyl_act(rs: RootSystem, word, weight) -> np.ndarray:
    """s_{i_1} ... s_{i_m}(weight)."""
    w = np.array(weight, dtype=np.int64)
    for i in reversed(word):
        w = rs.reflect(i, w)
    return w


def word_length(rs: RootSystem, word) -> int:
    """Number of positive roots sent negative by the product of the word."""
    count = 0
    for beta in rs.positive_roots:
        b = np.array(beta)
        for i in reversed(word):
            b = rs.reflect_root(i, b)
        count += int((b < 0).any())
    return count


def is_convex(order) -> bool:
    """Every sum of two roots in the order sits between them."""
    pos = {tuple(r): k for k, r in enumerate(order)}
    for a, ka in pos.items():
        for b, kb in pos.items():
            if ka >= kb:
                continue
            s = tuple(x + y for x, y in zip(a, b))
            if s in pos and not ka < pos[s] < kb:
                return False
    return True
