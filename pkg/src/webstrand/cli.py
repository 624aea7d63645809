"""Command line front end.

Commands: validate, strandings, vector, check-invariance, base-stranding,
from-tableau, oracle-check, relations, rank, render.  Exit status 0 means
success / all checks passed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import ckmoracle, relations, svgrender, webgraph
from .invariantvec import web_vector
from .stranding import (Stranding, base_stranding, enumerate_strandings,
                        parse_stranding, stranding_to_json)
from .tableauweb import StandardTableau, count_syt, tableau_webs, web_from_tableau
from .tensorspace import render_vector
from .qlaurent import rank_over_q
from .uqaction import invariance_report
from .webgraph import validate


def _load_web(path: str) -> webgraph.WebGraph:
    with open(path) as fh:
        return webgraph.parse(fh.read())


def _write(path: str | None, text: str):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    G = _load_web(args.web)
    problems = validate(G)
    if problems:
        for p in problems:
            print(f"invalid: {p}")
        return 1
    print("valid")
    return 0


def cmd_strandings(args) -> int:
    G = _load_web(args.web)
    strs = enumerate_strandings(G)
    if args.count:
        print(len(strs))
    else:
        print(json.dumps([s.to_json_obj() for s in strs], indent=2))
    return 0


def cmd_vector(args) -> int:
    G = _load_web(args.web)
    v = web_vector(G)
    if args.format == "json":
        print(json.dumps(v.to_json_obj(), indent=2))
    else:
        print(render_vector(v))
    return 0


def cmd_check_invariance(args) -> int:
    G = _load_web(args.web)
    rows = invariance_report(web_vector(G))
    ok = True
    for color, gen, passed in rows:
        print(f"{gen}_{color}: {'pass' if passed else 'FAIL'}")
        ok = ok and passed
    if not rows:
        print("scalar vector: trivially invariant")
    return 0 if ok else 1


def cmd_base_stranding(args) -> int:
    G = _load_web(args.web)
    S = base_stranding(G)
    _write(args.output, stranding_to_json(S))
    return 0


def cmd_from_tableau(args) -> int:
    word = [int(ch) for ch in args.word]
    T = StandardTableau.from_word(word)
    if max(word) != args.n:
        print(f"word uses {max(word)} rows but --n is {args.n}",
              file=sys.stderr)
        return 1
    G, S = web_from_tableau(T)
    _write(args.output, webgraph.serialize(G))
    if args.stranding:
        _write(args.stranding, stranding_to_json(S))
    return 0


def cmd_oracle_check(args) -> int:
    if args.fuzz:
        seed = int(os.environ.get("WEBCALC_SEED", "0"))
        rng = random.Random(seed)
        for trial in range(args.fuzz):
            P = ckmoracle.random_program(args.n, rng, 3)
            if not ckmoracle.compare_f_g(P):
                print(f"FAIL at trial {trial}: {P.pieces}")
                return 1
        print(f"{args.fuzz} randomized programs agree")
        return 0
    with open(args.program) as fh:
        P = ckmoracle.parse(fh.read())
    ok = ckmoracle.compare_f_g(P)
    print("agree" if ok else "DISAGREE")
    return 0 if ok else 1


def _verify_one(spec: tuple) -> tuple[bool, str, dict]:
    name, params = spec
    inst = relations.BUILDERS[name](**params)
    return relations.verify(inst), inst.name, inst.params


def cmd_relations(args) -> int:
    if args.all:
        grid = relations.admissible_grid(args.max_n)
        specs = [(relname(inst.name), dict(inst.params, n=inst.n))
                 for inst in grid]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_verify_one, specs))
        else:
            results = [_verify_one(s) for s in specs]
        bad = [(name, params) for ok, name, params in results if not ok]
        for name, params in bad:
            inst = relations.BUILDERS[relname(name)](**params)
            print(json.dumps({
                "rule": name, "params": params,
                "residual": relations.residual(inst).to_json_obj()}))
        print(f"{len(results) - len(bad)}/{len(results)} relation instances "
              f"verified")
        return 0 if not bad else 1
    params = {"n": args.n, "k": args.k}
    if args.rule in ("bigon", "square-switch"):
        params["l"] = args.l
    if args.rule == "ih":
        params.update(l=args.l, m=args.m)
    if args.rule in ("square-removal", "square-switch-general"):
        params.update(l=args.l, r=args.r, s=args.s)
    inst = relations.BUILDERS[args.rule](**params)
    ok = relations.verify(inst)
    if not ok:
        print(json.dumps({"rule": inst.name, "params": inst.params,
                          "residual": relations.residual(inst).to_json_obj()}))
    print("holds" if ok else "FAILS")
    return 0 if ok else 1


def relname(name: str) -> str:
    return {"I=H": "ih"}.get(name, name)


def cmd_rank(args) -> int:
    from .tableauweb import basis_rank_check
    expected = count_syt(args.n, args.m // args.n)
    ok = basis_rank_check(args.n, args.m)
    print(f"rank check (n={args.n}, m={args.m}): expected {expected}, "
          f"{'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_render(args) -> int:
    G = _load_web(args.web)
    S = None
    if args.stranding:
        with open(args.stranding) as fh:
            S = parse_stranding(fh.read())
    pair = None
    if args.flows:
        i, j = args.flows.split(",")
        pair = (int(i), int(j))
    _write(args.output, svgrender.render_svg(G, S, pair))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="webstrand",
        description="Exact web-vector calculus on stranded plane webs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the web invariants")
    p.add_argument("web")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("strandings", help="enumerate valid strandings")
    p.add_argument("web")
    p.add_argument("--count", action="store_true")
    p.set_defaults(fn=cmd_strandings)

    p = sub.add_parser("vector", help="compute the web vector")
    p.add_argument("web")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(fn=cmd_vector)

    p = sub.add_parser("check-invariance",
                       help="per-generator invariance table for f(G)")
    p.add_argument("web")
    p.set_defaults(fn=cmd_check_invariance)

    p = sub.add_parser("base-stranding", help="mod-n distance stranding")
    p.add_argument("web")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_base_stranding)

    p = sub.add_parser("from-tableau", help="build a basis web from a word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--stranding")
    p.set_defaults(fn=cmd_from_tableau)

    p = sub.add_parser("oracle-check",
                       help="compare the state sum against the program oracle")
    p.add_argument("program", nargs="?")
    p.add_argument("--fuzz", type=int, default=0,
                   help="verify this many random programs instead")
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(fn=cmd_oracle_check)

    p = sub.add_parser("relations", help="verify diagrammatic relations")
    p.add_argument("--rule", choices=sorted(relations.BUILDERS))
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_relations)

    p = sub.add_parser("rank", help="exact basis rank for tableau webs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("render", help="draw the web as SVG")
    p.add_argument("web")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--stranding")
    p.add_argument("--flows", help="overlay flow (i,j), e.g. --flows 2,4")
    p.set_defaults(fn=cmd_render)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
