"""Lattice-path families on the triangular arrangement and the path formula.

Dots of Delta_n are pairs (row, col) with row, col >= 1 and row + col <= n;
columns are counted from the right, so a step to (row, col + 1) moves left
and a step to (row + 1, col) moves down.  The sum row + col is the
antidiagonal of a dot; every member of a family advances one antidiagonal
per step, so members are compared dot-by-dot on a common antidiagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

import numpy as np

from . import _kernels
from .model import Model, get_model

Dot = tuple[int, int]

# (row, first col, last col), read right to left; dots are filled in convex order
_LAYOUT = {
    "E6": ((1, 8, 4), (2, 6, 4), (3, 5, 3), (4, 5, 1)),
    "E7": ((1, 9, 4), (2, 6, 4), (3, 5, 3), (4, 5, 1), (5, 5, 1), (6, 2, 1), (7, 1, 1), (8, 1, 1), (9, 1, 1)),
}
_SIZE = {"E6": 9, "E7": 10}

RULES = ("admissible", "literal", "geometric")


@dataclass(frozen=True)
class Arrangement:
    n: int
    dots: tuple[Dot, ...]  # dots[k] holds beta_{k+1}
    key: str

    @property
    def index(self) -> dict[Dot, int]:
        return {d: k for k, d in enumerate(self.dots)}

    def __contains__(self, dot) -> bool:
        return tuple(dot) in self.index


@dataclass(frozen=True)
class PathFamily:
    kind: str  # "triple", "quadruple" or "double+triple"
    paths: tuple[tuple[Dot, ...], ...]

    def dots(self) -> frozenset:
        return frozenset(d for p in self.paths for d in p)

    def ends(self) -> tuple[Dot, ...]:
        return tuple(p[-1] for p in self.paths)

    def to_json(self) -> dict:
        return {"kind": self.kind, "paths": [[list(d) for d in p] for p in self.paths]}

    def transpose(self) -> "PathFamily":
        return PathFamily(self.kind, tuple(tuple((c, r) for r, c in p) for p in self.paths))


def delta_dots(n: int) -> list[Dot]:
    return [(r, c) for r in range(1, n) for c in range(1, n - r + 1)]


def layout_dots(type_tag: str) -> tuple[Dot, ...]:
    return tuple((r, c) for r, first, last in _LAYOUT[type_tag] for c in range(first, last - 1, -1))


def arrow_violations(model: Model, dots) -> list[tuple[int, int]]:
    """Index pairs (1-based) where adjacency and simple-root difference disagree.

    Two embedded roots must differ by a simple root exactly when the second
    sits one step to the right of, or one step below, the first.
    """
    roots = np.array(model.jroots)
    out = []
    for x, (r1, c1) in enumerate(dots):
        for y, (r2, c2) in enumerate(dots):
            d = roots[y] - roots[x]
            simple = int(d.sum()) == 1 and bool((d >= 0).all())
            adjacent = (r2, c2) in ((r1, c1 - 1), (r1 + 1, c1))
            if simple != adjacent:
                out.append((x + 1, y + 1))
    return out


@cache
def delta_embedding(model: Model) -> Arrangement:
    dots = layout_dots(model.type_tag)
    n = _SIZE[model.type_tag]
    if len(set(dots)) != model.M or any(r + c > n for r, c in dots):
        raise RuntimeError("layout does not fit the arrangement")
    bad = arrow_violations(model, dots)
    if bad:
        raise RuntimeError(f"layout breaks arrow consistency at {bad[:4]}")
    return Arrangement(n, dots, model.key)


# ---------------------------------------------------------------- enumeration


def _bundles(leads, n: int) -> list[tuple[tuple[Dot, ...], ...]]:
    """Families of synchronised paths running to the antidiagonal n.

    leads[k] are the forced first dots of member k, listed top to bottom.
    On every shared antidiagonal the rows of active members increase
    strictly, except that neighbours may sit on the same dot while both are
    still inside their forced leads.
    """
    K = len(leads)
    born = [sum(lead[0]) for lead in leads]
    t0 = min(born)
    out = []

    def admissible(paths) -> bool:
        prev = None
        for k, p in enumerate(paths):
            if not p:
                continue
            if prev is not None:
                j, q = prev
                shared = len(q) <= len(leads[j]) and len(p) <= len(leads[k]) and q[-1] == p[-1]
                if not (q[-1][0] < p[-1][0] or shared):
                    return False
            prev = (k, p)
        return True

    def grow(t, paths):
        if t == n:
            out.append(tuple(tuple(p) for p in paths))
            return
        options = []
        for k, p in enumerate(paths):
            if not p:
                options.append([[leads[k][0]]] if born[k] == t + 1 else [[]])
            elif len(p) < len(leads[k]):
                options.append([p + [leads[k][len(p)]]])
            else:
                r, c = p[-1]
                options.append([p + [(r + 1, c)], p + [(r, c + 1)]])
        for combo in _product(options):
            if admissible(combo):
                grow(t + 1, combo)

    grow(t0, [[lead[0]] if born[k] == t0 else [] for k, lead in enumerate(leads)])
    return out


def _product(options):
    if not options:
        yield []
        return
    for head in options[0]:
        for tail in _product(options[1:]):
            yield [head] + tail


def _at(path, t):
    for d in path:
        if d[0] + d[1] == t:
            return d
    return None


def _ends_chain(paths) -> bool:
    ends = sorted((p[-1] for p in paths), key=lambda d: d[0])
    return all(b == (a[0] + 1, a[1] - 1) for a, b in zip(ends, ends[1:]))


def _gaps_in(paths, emb: Arrangement, t_from: int) -> bool:
    """Dots skipped between neighbouring members all belong to the embedded set."""
    for t in range(t_from, emb.n + 1):
        rows = sorted({d[0] for d in (_at(p, t) for p in paths) if d is not None})
        for a, b in zip(rows, rows[1:]):
            if any((r, t - r) not in emb for r in range(a + 1, b)):
                return False
    return True


def _passes(paths, dots) -> bool:
    cov = {d for p in paths for d in p}
    return all(d in cov for d in dots)


_TRIPLE = (((1, 1),), ((1, 1), (2, 1)), ((2, 1),))
_QUADRUPLE = (((1, 1),), ((1, 1), (2, 1)), ((2, 1), (3, 1)), ((3, 1),))


def _both_hands(leads, n):
    """Families whose second member branches downward, plus their mirror images."""
    down = _bundles(leads, n)
    mirror = [tuple(tuple((c, r) for r, c in p) for p in reversed(f)) for f in down]
    return down + mirror


def _letter_two_dots(model: Model, emb: Arrangement) -> list[Dot]:
    iJ = model.i0[: model.M]
    return [emb.dots[k] for k, a in enumerate(iJ) if a == 2]


def _e6_families(model: Model, emb: Arrangement, rule: str) -> list[PathFamily]:
    twos = _letter_two_dots(model, emb)
    fams = []
    for paths in _both_hands(_TRIPLE, emb.n):
        if not _ends_chain(paths) or any(p[-1][0] > 4 for p in paths):
            continue
        if rule == "geometric" and not (_gaps_in(paths, emb, 2) and _passes(paths, twos)):
            continue
        fams.append(PathFamily("triple", paths))
    return fams


def _e7_quadruples(model: Model, emb: Arrangement, rule: str) -> list[PathFamily]:
    fams = []
    for paths in _both_hands(_QUADRUPLE, emb.n):
        if not _passes(paths, [(4, 1), (1, 4)]) or not _ends_chain(paths):
            continue
        rows = [p[-1][0] for p in paths]
        if not (max(rows) <= 5 or min(rows) >= 5):
            continue
        if rule == "geometric":
            upper = max(rows) <= 5
            twos = [(3, 3), (2, 6) if upper else (6, 2)]
            if not (_gaps_in(paths, emb, 2) and _passes(paths, twos)):
                continue
        fams.append(PathFamily("quadruple", paths))
    return fams


def _e7_pairs(model: Model, emb: Arrangement, rule: str) -> list[PathFamily]:
    n = emb.n
    triples = [
        p
        for p in _both_hands(_TRIPLE, n)
        if _passes(p, [(4, 1), (1, 4), (2, 6), (6, 2)]) and (3, 3) not in {d for q in p for d in q}
    ]
    doubles = []
    for start in ((3, 4), (4, 3)):
        for pair in _bundles(((start,), (start,)), n):
            if pair[0][1] != pair[1][1] and (5, 5) in (pair[0][-1], pair[1][-1]):
                doubles.append(pair)
    fams = []
    for tri in triples:
        for dbl in doubles:
            t0 = sum(dbl[0][0])
            if not _nested(tri, dbl, t0, n):
                continue
            paths = dbl + tri
            if not _ends_chain(paths):
                continue
            if rule == "geometric" and not _gaps_in(paths, emb, t0):
                continue
            fams.append(PathFamily("double+triple", paths))
    return fams


def _nested(tri, dbl, t0: int, n: int) -> bool:
    """The double path sits strictly inside one gap of the triple, never touching it."""
    slot = None
    for t in range(t0, n + 1):
        rt = [_at(p, t)[0] for p in tri]
        rd = [_at(p, t)[0] for p in dbl]
        here = [k for k in range(len(rt) - 1) if rt[k] < min(rd) and max(rd) < rt[k + 1]]
        if not here or (slot is not None and here[0] != slot):
            return False
        slot = here[0]
    return True


@cache
def _raw_families(model: Model, rule: str) -> tuple[PathFamily, ...]:
    emb = delta_embedding(model)
    if model.type_tag == "E6":
        fams = _e6_families(model, emb, rule)
    else:
        fams = _e7_quadruples(model, emb, rule) + _e7_pairs(model, emb, rule)
    return tuple(sorted(set(fams), key=lambda f: (f.kind, f.paths)))


@cache
def enumerate_families(model: Model, rule: str = "admissible") -> tuple[PathFamily, ...]:
    """The family set used by the path formula.

    rule="literal" keeps every family meeting the endpoint, passage and
    nesting conditions.  rule="geometric" additionally asks that any dot
    skipped between neighbouring members is an embedded root, and (for
    triples and quadruples) that the family runs through the embedded dots
    carrying the letter 2.  rule="admissible" keeps the literal families
    whose array is a trail array.
    """
    if rule not in RULES:
        raise ValueError(f"rule must be one of {RULES}")
    if rule == "admissible":
        from .trails import D_J

        target = D_J(model)
        return tuple(f for f in _raw_families(model, "literal") if psi(model, f) in target)
    return _raw_families(model, rule)


# ------------------------------------------------------------------- statistic


def psi(model: Model, family: PathFamily) -> tuple[int, ...]:
    """0/1 array on the embedded roots: 0 where the family covers the dot."""
    cov = family.dots()
    return tuple(0 if d in cov else 1 for d in delta_embedding(model).dots)


def incidence(model: Model, families) -> np.ndarray:
    return np.array([[1 - x for x in psi(model, f)] for f in families], dtype=np.int64).reshape(-1, model.M)


@cache
def _incidence(model: Model, rule: str) -> np.ndarray:
    fams = enumerate_families(model, rule)
    # families with equal coverage give equal norms; keep one row per array
    return np.unique(incidence(model, fams), axis=0)


def family_norm(model: Model, c, family: PathFamily) -> int:
    cov = family.dots()
    return int(sum(int(x) for x, d in zip(c, delta_embedding(model).dots) if d in cov))


def eps_star_paths(model: Model, C, rule: str = "admissible", use=None):
    """max over the family set of the covered sum; one datum or a batch of rows."""
    C = np.asarray(C, dtype=np.int64)
    single = C.ndim == 1
    out = _kernels.family_max(C, _incidence(model, rule), use)
    return int(out[0]) if single else out


def render(model: Model, family: PathFamily | None = None, array=None) -> str:
    """ASCII picture of Delta_n: digits for members, o/. for embedded/other dots.

    With an array, embedded dots show its 0/1 entries instead.
    """
    emb = delta_embedding(model)
    idx = emb.index
    mark: dict[Dot, str] = {}
    if family is not None:
        for k, p in enumerate(family.paths):
            for d in p:
                mark.setdefault(d, str(k + 1))
    lines = []
    for r in range(1, emb.n):
        cells = []
        for c in range(emb.n - r, 0, -1):
            d = (r, c)
            if array is not None and d in idx:
                cells.append(str(array[idx[d]]))
            elif d in mark:
                cells.append(mark[d])
            else:
                cells.append("o" if d in idx else ".")
        lines.append(("  " * (r - 1)) + " ".join(cells))
    return "\n".join(lines)


def families_for(key: str, rule: str = "admissible") -> tuple[PathFamily, ...]:
    return enumerate_families(get_model(key), rule)
