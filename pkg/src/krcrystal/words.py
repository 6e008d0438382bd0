"""Built-in reduced words, braid moves and simply-braided move scripts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .roots import RootSystem, build_root_system, is_reduced, roots_from_word, weyl_act

MINUSCULE = {"E6": (1, 6), "E7": (7,)}

_E6_IJ = {
    1: (1, 3, 4, 5, 6, 2, 4, 5, 3, 4, 2, 1, 3, 4, 5, 6),
    6: (6, 5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1),
}
_E6_IJSTAR = {
    1: (5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 5, 4, 3, 1, 5, 4, 3, 5, 4, 5),
    6: (3, 4, 5, 6, 2, 4, 5, 3, 4, 2, 3, 4, 5, 6, 3, 4, 5, 3, 4, 3),
}
_E7_IJ = (7, 6, 5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1, 7, 6, 5, 4, 3, 2, 4, 5, 6, 7)
# the E7 Levi word is an E6 longest word; either E6 variant works, we use r = 6
E7_LEVI_FROM = 6

# words equal to i^J up to commutations, used to bring k* to the front
_OV_E6R6 = {
    2: (6, 5, 4, 3, 1, 2, 4, 3, 5, 6, 4, 5, 2, 4, 3, 1),
    3: (6, 5, 4, 2, 3, 4, 1, 3, 5, 4, 2, 6, 5, 4, 3, 1),
    4: (6, 5, 4, 3, 1, 2, 4, 5, 3, 4, 2, 6, 5, 4, 3, 1),
    5: _E6_IJ[6],
    6: _E6_IJ[6],
}
_OV_E7 = {
    1: (7, 6, 5, 4, 3, 1, 2, 4, 3, 5, 4, 2, 6, 7, 5, 6, 4, 5, 3, 4, 1, 3, 2, 4, 5, 6, 7),
    2: (7, 6, 5, 4, 2, 3, 4, 1, 3, 5, 4, 2, 6, 5, 4, 3, 1, 7, 6, 5, 4, 3, 2, 4, 5, 6, 7),
    3: (7, 6, 5, 4, 3, 1, 2, 4, 3, 5, 6, 4, 5, 2, 4, 3, 1, 7, 6, 5, 4, 2, 3, 4, 5, 6, 7),
    4: (7, 6, 5, 4, 3, 1, 2, 4, 5, 3, 4, 2, 6, 5, 4, 3, 1, 7, 6, 5, 4, 3, 2, 4, 5, 6, 7),
    5: _E7_IJ,
    6: _E7_IJ,
}
KSTAR_E6R6 = {2: 5, 3: 2, 4: 4, 5: 3, 6: 1}
KSTAR_E7 = {1: 6, 2: 2, 3: 5, 4: 4, 5: 3, 6: 1}

# diagram automorphism of E6; the r = 1 data is the image of the r = 6 data
E6_FLIP = {1: 6, 2: 2, 3: 5, 4: 4, 5: 3, 6: 1}


def _flip(word):
    return tuple(E6_FLIP[a] for a in word)


def _check_minuscule(rs: RootSystem, r: int) -> None:
    ok = {
        "A": 1 <= r <= rs.rank,
        "D": r in (1, rs.rank - 1, rs.rank),
    }.get(rs.type_tag, r in MINUSCULE.get(rs.type_tag, ()))
    if not ok:
        raise ValueError(f"node {r} is not minuscule for {rs.name}")


def _type_d_iJ(n: int, r: int) -> tuple[int, ...]:
    if r == 1:
        return tuple(range(1, n + 1)) + tuple(range(n - 2, 0, -1))
    word: list[int] = []
    for s in range(1, n):
        if s % 2 == 1:
            head = r
        else:
            head = r - 1 if r == n else r + 1
        word.append(head)
        word.extend(range(n - 2, s - 1, -1))
    return tuple(word)


def builtin_iJ(type_tag: str, r: int, rank: int | None = None) -> tuple[int, ...]:
    rs = build_root_system(type_tag, rank)
    _check_minuscule(rs, r)
    if rs.type_tag == "E6":
        return _E6_IJ[r]
    if rs.type_tag == "E7":
        return _E7_IJ
    if rs.type_tag == "A":
        return tuple(a for s in range(1, rs.rank - r + 2) for a in range(r + s - 1, s - 1, -1))
    return _type_d_iJ(rs.rank, r)


def _levi_longest(rs: RootSystem, nodes) -> tuple[int, ...]:
    # greedy: append any node whose simple root is still sent positive
    word: list[int] = []
    while True:
        for j in sorted(nodes):
            image = rs.simple_root(j)
            for a in reversed(word):
                image = rs.reflect_root(a, image)
            if (image > 0).any():
                word.append(j)
                break
        else:
            return tuple(word)


def builtin_iJstar(type_tag: str, r: int, rank: int | None = None) -> tuple[int, ...]:
    rs = build_root_system(type_tag, rank)
    _check_minuscule(rs, r)
    if rs.type_tag == "E6":
        return _E6_IJSTAR[r]
    if rs.type_tag == "E7":
        return _E6_IJ[E7_LEVI_FROM] + _E6_IJSTAR[E7_LEVI_FROM]
    jstar = [j for j in rs.nodes if j != rs.star(r)]
    return _levi_longest(rs, jstar)


def builtin_i0(type_tag: str, r: int, rank: int | None = None) -> tuple[int, ...]:
    return builtin_iJ(type_tag, r, rank) + builtin_iJstar(type_tag, r, rank)


def commutes(rs: RootSystem, a: int, b: int) -> bool:
    return rs.cartan[a - 1, b - 1] == 0


def apply_move(rs: RootSystem, word, position: int, kind: int) -> tuple[int, ...]:
    """Apply a 2-term or 3-term braid move starting at 1-based `position`."""
    w = list(word)
    k = position - 1
    if kind == 2:
        if not 0 <= k < len(w) - 1 or w[k] == w[k + 1] or not commutes(rs, w[k], w[k + 1]):
            raise ValueError(f"no 2-term move at position {position}")
        w[k], w[k + 1] = w[k + 1], w[k]
    elif kind == 3:
        if not 0 <= k < len(w) - 2:
            raise ValueError(f"no 3-term move at position {position}")
        a, b, c = w[k : k + 3]
        if a != c or rs.cartan[a - 1, b - 1] != -1:
            raise ValueError(f"no 3-term move at position {position}")
        w[k : k + 3] = [b, a, b]
    else:
        raise ValueError("kind must be 2 or 3")
    return tuple(w)


def same_element(rs: RootSystem, u, v) -> bool:
    return all(
        np.array_equal(weyl_act(rs, u, rs.fundamental_weight(i)), weyl_act(rs, v, rs.fundamental_weight(i)))
        for i in rs.nodes
    )


def commutation_moves(rs: RootSystem, source, target) -> list[int]:
    """Positions of 2-term moves turning `source` into `target`."""
    w = list(source)
    moves = []
    for t, letter in enumerate(target):
        try:
            p = w.index(letter, t)
        except ValueError:
            raise ValueError("words differ by more than commutations") from None
        while p > t:
            if not commutes(rs, w[p - 1], w[p]):
                raise ValueError("words differ by more than commutations")
            w[p - 1], w[p] = w[p], w[p - 1]
            moves.append(p)  # 1-based position of the left letter
            p -= 1
    return moves


@dataclass(frozen=True)
class MoveScript:
    source: tuple[int, ...]
    target_letter: int
    moves: tuple[tuple[int, int], ...]  # (kind, 1-based position)
    triples: tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...] = field(default=())
    prefix: tuple[int, ...] = ()

    def run(self, rs: RootSystem) -> tuple[int, ...]:
        w = self.source
        for kind, pos in self.moves:
            w = apply_move(rs, w, pos, kind)
        return w


def _ov_data(type_tag: str, r: int):
    if type_tag == "E7":
        return _OV_E7, KSTAR_E7
    if r == 6:
        return _OV_E6R6, KSTAR_E6R6
    ov = {E6_FLIP[k]: _flip(v) for k, v in _OV_E6R6.items()}
    kstar = {E6_FLIP[k]: E6_FLIP[v] for k, v in KSTAR_E6R6.items()}
    return ov, kstar


def overline_iJ(type_tag: str, r: int, k: int) -> tuple[int, ...]:
    ov, _ = _ov_data(build_root_system(type_tag).type_tag, r)
    return ov[k]


def kstar_table(type_tag: str, r: int) -> dict[int, int]:
    return dict(_ov_data(build_root_system(type_tag).type_tag, r)[1])


def simply_braided_script(type_tag: str, r: int, i: int) -> MoveScript:
    """Moves bringing i to the front of i^J . k, where k* = i.

    The word is first rearranged by commutations into the transcribed
    representative, then the root alpha_i is walked to the front using
    commutations and 3-term moves that end with alpha_i.
    """
    rs = build_root_system(type_tag)
    _check_minuscule(rs, r)
    if rs.type_tag not in ("E6", "E7"):
        raise ValueError("scripts are only provided for E6 and E7")
    if i == r or i not in rs.nodes:
        raise ValueError(f"no script for i = {i}")
    ov, kstar = _ov_data(rs.type_tag, r)
    k = next(k for k, v in kstar.items() if v == i)
    iJ = builtin_iJ(rs.type_tag, r)
    moves: list[tuple[int, int]] = [(2, p) for p in commutation_moves(rs, iJ, ov[k])]
    word = ov[k] + (k,)
    alpha = tuple(int(x) for x in rs.simple_root(i))
    betas = roots_from_word(rs, word)
    p = betas.index(alpha)  # 0-based
    triples = []
    while p > 0:
        if commutes(rs, word[p - 1], word[p]):
            word = apply_move(rs, word, p, 2)
            moves.append((2, p))
            p -= 1
        elif p >= 2 and word[p - 2] == word[p]:
            g, gp = betas[p - 2], betas[p - 1]
            word = apply_move(rs, word, p - 1, 3)
            moves.append((3, p - 1))
            triples.append((g, gp, alpha))
            p -= 2
        else:
            raise RuntimeError(f"leftward walk blocked at position {p + 1}")
        betas = roots_from_word(rs, word)
        assert betas[p] == alpha
    return MoveScript(iJ + (k,), i, tuple(moves), tuple(triples), ov[k])
