"""Command-line front end: words, roots, build, verify, export."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import affine, pbw
from .model import MODEL_KEYS, Model, get_model
from .paths import RULES, enumerate_families, eps_star_paths, psi, render
from .roots import build_root_system, is_reduced
from .trails import D_J, eps_star_trails, fixture_arrays
from .words import builtin_i0, builtin_iJ, builtin_iJstar, simply_braided_script

SUITES = ("regular", "dual", "dims", "formula", "signatures", "trails")
DEFAULT_NODE = {"E6": 6, "E7": 7}
MAX_S = {"E6": 2, "E7": 2}


@dataclass
class RunConfig:
    type_tag: str
    node: int
    s: int | None = None
    suites: list[str] = field(default_factory=list)
    samples: int = 0
    seed: int = 0
    exhaustive01: bool = False
    audit: bool = False
    timing: bool = True
    out: Path | None = None

    @property
    def model(self) -> Model:
        return get_model(self.type_tag, self.node)


# ----------------------------------------------------------------- suites


def _suite_dims(cfg: RunConfig):
    m = cfg.model
    cases, failures = 0, []
    for s in _s_range(cfg):
        kr = affine.build_KR(m, s, audit=cfg.audit, check_count=False)
        want = m.rs.weyl_dim(s * m.rs.fundamental_weight(m.r))
        cases += 1
        if len(kr) != want:
            failures.append({"s": s, "elements": len(kr), "expected": want})
    return cases, failures


def _suite_regular(cfg: RunConfig):
    m = cfg.model
    cases, failures = 0, []
    for s in _s_range(cfg):
        kr = affine.build_KR(m, s, audit=cfg.audit)
        cases += len(kr) * len(kr.labels)
        failures += [{"s": s, "violation": v} for v in affine.verify_regular(kr)]
        iso = affine.classical_check(kr)
        cases += 1
        if not iso:
            failures.append({"s": s, "classical": iso.reason})
    return cases, failures


def _suite_dual(cfg: RunConfig):
    m = cfg.model
    cases, failures = 0, []
    for s in _s_range(cfg):
        kr = affine.build_KR(m, s, audit=cfg.audit)
        for reverse in (True, False):
            res = affine.dual_relabel_check(kr, reverse=reverse)
            cases += 1
            if not res:
                failures.append({"s": s, "reversed": reverse, "reason": res.reason})
    return cases, failures


def _suite_formula(cfg: RunConfig):
    m = cfg.model
    blocks = []
    if cfg.exhaustive01:
        if m.M > 20:
            raise ValueError(f"the binary cube for {m.key} has 2^{m.M} points; use sampling")
        blocks.append(np.array(list(itertools.product((0, 1), repeat=m.M)), dtype=np.int64))
    if cfg.samples:
        rng = np.random.default_rng(cfg.seed)
        blocks.append(rng.integers(0, 5, size=(cfg.samples, m.M), dtype=np.int64))
    if not blocks:
        raise ValueError("formula suite needs --samples or --exhaustive01")
    C = np.concatenate(blocks)
    a = eps_star_paths(m, C)
    b = eps_star_trails(m, C)
    bad = np.nonzero(a != b)[0]
    failures = [{"c": C[k].tolist(), "paths": int(a[k]), "trails": int(b[k])} for k in bad[:20]]
    if len(bad) > 20:
        failures.append({"omitted": int(len(bad) - 20)})
    return len(C), failures


def _suite_signatures(cfg: RunConfig):
    m = cfg.model
    bad = pbw.template_mismatches(m)
    return len(m.J), [{"i": i} for i in bad]


def _suite_trails(cfg: RunConfig):
    m = cfg.model
    printed = fixture_arrays(m)
    ours = set(D_J(m))
    failures = [{"missing_from_fixture": list(a)} for a in sorted(ours - printed)]
    failures += [{"not_a_trail": list(a)} for a in sorted(printed - ours)]
    return len(ours | printed), failures


_RUNNERS = {
    "regular": _suite_regular,
    "dual": _suite_dual,
    "dims": _suite_dims,
    "formula": _suite_formula,
    "signatures": _suite_signatures,
    "trails": _suite_trails,
}


def _s_range(cfg: RunConfig):
    top = cfg.s if cfg.s is not None else MAX_S[cfg.type_tag]
    return range(1, top + 1)


def run_suite(cfg: RunConfig, suite: str) -> dict:
    start = time.perf_counter()
    cases, failures = _RUNNERS[suite](cfg)
    elapsed = round((time.perf_counter() - start) * 1000) if cfg.timing else None
    return {
        "suite": suite,
        "model": cfg.model.key,
        "cases": int(cases),
        "failures": failures,
        "seed": cfg.seed,
        "runtime_ms": elapsed,
    }


# --------------------------------------------------------------- commands


def cmd_words(cfg: RunConfig) -> int:
    rs = build_root_system(cfg.type_tag)
    r = cfg.node
    words = {
        "iJ": builtin_iJ(cfg.type_tag, r),
        "iJstar": builtin_iJstar(cfg.type_tag, r),
        "i0": builtin_i0(cfg.type_tag, r),
    }
    for name, w in words.items():
        print(f"{name:7s} {' '.join(map(str, w))}  (length {len(w)}, reduced={is_reduced(rs, w)})")
    for i in rs.nodes:
        if i == r:
            continue
        sc = simply_braided_script(cfg.type_tag, r, i)
        moves = " ".join(f"{k}@{p}" for k, p in sc.moves)
        print(f"script i={i}: {moves}")
    return 0


def cmd_roots(cfg: RunConfig) -> int:
    rs = build_root_system(cfg.type_tag)
    if cfg.node is None:
        roots = rs.positive_roots
    else:
        roots = cfg.model.jroots
    for k, b in enumerate(roots, 1):
        print(f"{k:3d} {rs.root_str(b)}")
    print(f"{len(roots)} roots")
    return 0


def cmd_families(cfg: RunConfig, rule: str, show: int | None) -> int:
    m = cfg.model
    fams = enumerate_families(m, rule)
    if show is None:
        kinds = {}
        for f in fams:
            kinds[f.kind] = kinds.get(f.kind, 0) + 1
        images = {psi(m, f) for f in fams}
        print(json.dumps({"model": m.key, "rule": rule, "families": len(fams), "kinds": kinds, "images": len(images)}, sort_keys=True))
        return 0
    if not 0 <= show < len(fams):
        raise ValueError(f"family index must be below {len(fams)}")
    print(render(m, fams[show]))
    print(json.dumps(fams[show].to_json()))
    return 0


def cmd_build(cfg: RunConfig) -> int:
    kr = affine.build_KR(cfg.model, cfg.s or 1, audit=cfg.audit)
    text = affine.export(kr, "json")
    _emit(text, cfg.out)
    print(f"{cfg.model.key} s={kr.s}: {len(kr)} elements", file=sys.stderr)
    return 0


def cmd_export(cfg: RunConfig, fmt: str) -> int:
    kr = affine.build_KR(cfg.model, cfg.s or 1, audit=cfg.audit)
    _emit(affine.export(kr, fmt), cfg.out)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    status = 0
    lines = []
    for suite in cfg.suites:
        report = run_suite(cfg, suite)
        lines.append(json.dumps(report, sort_keys=True))
        print(f"{'PASS' if not report['failures'] else 'FAIL'} {suite} {report['model']} cases={report['cases']}", file=sys.stderr)
        if report["failures"]:
            status = 1
    _emit("\n".join(lines) + "\n", cfg.out)
    return status


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text)


# ----------------------------------------------------------------- parsing


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="krcrystal", description="PBW models of KR crystals for minuscule E6/E7 nodes.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def model_args(sp):
        sp.add_argument("--type", dest="type_tag", required=True, choices=["E6", "E7"])
        sp.add_argument("--node", type=int, default=None)
        sp.add_argument("--audit", action="store_true", help="test membership with the trail DP")

    sp = sub.add_parser("words", help="print built-in reduced words and move scripts")
    model_args(sp)
    sp = sub.add_parser("roots", help="print positive roots, or the nilradical roots when --node is given")
    model_args(sp)
    sp = sub.add_parser("families", help="list path families, or draw one over the arrangement")
    model_args(sp)
    sp.add_argument("--show", type=int, default=None, metavar="K", help="draw family K")
    sp.add_argument("--rule", choices=RULES, default="admissible")
    sp = sub.add_parser("build", help="construct B^{r,s} and write it as JSON")
    model_args(sp)
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--out", type=Path)
    sp = sub.add_parser("export", help="write B^{r,s} as DOT or JSON")
    model_args(sp)
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--format", choices=["dot", "json"], default="dot")
    sp.add_argument("--out", type=Path)
    sp = sub.add_parser("verify", help="run verification suites and print JSON reports")
    model_args(sp)
    sp.add_argument("--suite", action="append", choices=SUITES + ("all",), required=True)
    sp.add_argument("--s", type=int, default=None, help="largest s (default 2)")
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--exhaustive01", action="store_true")
    sp.add_argument("--no-timing", action="store_true", help="omit runtime so reports are byte-identical")
    sp.add_argument("--out", type=Path)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    node = args.node
    if node is None and args.cmd != "roots":
        node = DEFAULT_NODE[args.type_tag]
    suites = []
    for s in getattr(args, "suite", None) or []:
        suites += list(SUITES) if s == "all" else [s]
    cfg = RunConfig(
        type_tag=args.type_tag,
        node=node,
        s=getattr(args, "s", None),
        suites=suites,
        samples=getattr(args, "samples", 0),
        seed=getattr(args, "seed", 0),
        exhaustive01=getattr(args, "exhaustive01", False),
        audit=args.audit,
        timing=not getattr(args, "no_timing", False),
        out=getattr(args, "out", None),
    )
    try:
        if node is not None and f"{cfg.type_tag}r{node}" not in MODEL_KEYS:
            raise ValueError(f"node {node} is not in scope for {cfg.type_tag}")
        if args.cmd == "words":
            return cmd_words(cfg)
        if args.cmd == "roots":
            return cmd_roots(cfg)
        if args.cmd == "families":
            return cmd_families(cfg, args.rule, args.show)
        if args.cmd == "build":
            return cmd_build(cfg)
        if args.cmd == "export":
            return cmd_export(cfg, args.format)
        return cmd_verify(cfg)
    except (ValueError, FileNotFoundError, affine.CountMismatch) as exc:
        print(f"krcrystal: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
