"""Command-line front end.

Subcommands cover sampling, encodings, the bijection in both
directions, structural validation, exhaustive enumeration, and the
experiment bench.  Identical command lines with identical seeds produce
byte-identical outputs; `--in -` reads stdin.

Exit codes: 0 success, 1 validation/verdict failure, 2 malformed input,
3 sampler budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BimapLabError, BudgetExceeded, MalformedTree
from .rng import RngState, default_seed
from . import trees as trees_mod
from . import maps as maps_mod


def _fail(code: int, message: str) -> int:
    sys.stderr.write(f"error code={code} message={json.dumps(message)}\n")
    return code


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return Path(path).open("w"), True


def _cmd_sample_mobile(args) -> int:
    from .sampler import sample_mobile

    fp, close = _open_out(args.out)
    try:
        for k in range(args.count):
            mob = sample_mobile(args.n, RngState(args.seed, (k,)))
            trees_mod.write_mobile(mob, fp, eps=0)
    finally:
        if close:
            fp.close()
    return 0


def _cmd_sample_map(args) -> int:
    from .bijection import mobile_to_map
    from .sampler import sample_mobile

    state = RngState(args.seed)
    gen = state.generator()
    mob = sample_mobile(args.n, gen)
    eps = int(gen.integers(0, 2))
    m = mobile_to_map(mob, eps)
    if not args.pointed:
        m = maps_mod.CombinatorialMap(m.sigma, m.root, None)
    fp, close = _open_out(args.out)
    try:
        maps_mod.write_map(m, fp)
    finally:
        if close:
            fp.close()
    return 0


def _cmd_encode(args) -> int:
    from . import paths as paths_mod

    mob, _eps = trees_mod.parse_mobiles(_read_text(args.infile))[0]
    what = {
        "contour": lambda: paths_mod.contour_path(mob.tree),
        "white": lambda: paths_mod.white_contour_path(mob.tree),
        "label": lambda: paths_mod.label_path(mob),
        "y": lambda: paths_mod.lukasiewicz_path(mob.tree),
        "height": lambda: paths_mod.height_and_label_profiles(mob)[0],
    }
    path = what[args.what]()
    fp, close = _open_out(args.out)
    try:
        path.to_csv(fp)
    finally:
        if close:
            fp.close()
    return 0


def _cmd_bdg(args) -> int:
    from .bijection import mobile_to_map

    mob, eps_file = trees_mod.parse_mobiles(_read_text(args.infile))[0]
    eps = eps_file if args.eps is None else args.eps
    m = mobile_to_map(mob, eps)
    fp, close = _open_out(args.out)
    try:
        maps_mod.write_map(m, fp)
    finally:
        if close:
            fp.close()
    return 0


def _cmd_bdg_inverse(args) -> int:
    from .bijection import map_to_mobile

    m = maps_mod.parse_map(_read_text(args.infile))
    mob, eps = map_to_mobile(m)
    fp, close = _open_out(args.out)
    try:
        trees_mod.write_mobile(mob, fp, eps=eps)
    finally:
        if close:
            fp.close()
    return 0


def _cmd_validate(args) -> int:
    text = _read_text(args.infile)
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if head == "MAP":
        m = maps_mod.parse_map(text)
        report = maps_mod.validate_map(m)
        for line in report.failures:
            print(f"FAIL {line}")
        print(
            f"map n={report.n_edges} V={report.vertex_count} F={report.face_count} "
            f"euler={report.euler_characteristic} ok={report.ok}"
        )
        return 0 if report.ok else 1
    if head == "MOBILE":
        records = trees_mod.parse_mobiles(text)  # raises on bad structure
        from .paths import check_contour_record_identity

        ok = True
        for mob, _eps in records:
            if not check_contour_record_identity(mob.tree):
                ok = False
                print("FAIL contour record identity")
        print(f"mobiles={len(records)} ok={ok}")
        return 0 if ok else 1
    raise MalformedTree("input is neither a MAP nor a MOBILE record")


def _cmd_enumerate(args) -> int:
    from .bijection import mobile_to_map
    from .enumeration import enumerate_mobiles, exact_tree_law
    from .maps import canonical_code

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    count = 0
    codes = set()
    with (outdir / f"mobiles_n{args.n}.txt").open("w") as fp:
        for mob in enumerate_mobiles(args.n):
            trees_mod.write_mobile(mob, fp)
            count += 1
            for eps in (0, 1):
                codes.add(canonical_code(mobile_to_map(mob, eps)))
    with (outdir / f"law_n{args.n}.csv").open("w") as fp:
        fp.write("treeCode,p_num,p_den\n")
        for tree, p in sorted(
            exact_tree_law(args.n).items(),
            key=lambda kv: kv[0].child_counts.tolist(),
        ):
            code = "-".join(str(int(c)) for c in tree.child_counts)
            fp.write(f"{code},{p.numerator},{p.denominator}\n")
    census = {
        "n": args.n,
        "mobiles": count,
        "distinct_rooted_pointed_codes": len(codes),
        "expected_codes": 2 * count,
        "bijective": len(codes) == 2 * count,
    }
    (outdir / f"census_n{args.n}.json").write_text(
        json.dumps(census, indent=2) + "\n"
    )
    print(json.dumps(census))
    return 0 if census["bijective"] else 1


def _cmd_experiment(args) -> int:
    from .experiments import EXPERIMENTS

    if args.name not in EXPERIMENTS:
        raise MalformedTree(
            f"unknown experiment {args.name!r}; choices: {sorted(EXPERIMENTS)}"
        )
    config = {}
    if args.config:
        config = json.loads(_read_text(args.config))
    config.setdefault("seed", args.seed)
    report = EXPERIMENTS[args.name](config, RngState(config["seed"]))
    outdir = Path(args.out)
    paths = report.write(outdir)
    if args.freeze:
        (outdir / f"{report.file_stem()}_config.json").write_text(
            json.dumps(report.config, indent=2, sort_keys=True, default=str) + "\n"
        )
    print("\n".join(report.lines()))
    for p in paths:
        print(f"wrote {p}")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bimaplab",
        description="Exact sampler and verification lab for uniform rooted "
        "bipartite planar maps.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="experiment parallelism hint (results are deterministic regardless)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample-mobile", help="sample conditioned labeled mobiles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=default_seed())
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_sample_mobile)

    p = sub.add_parser("sample-map", help="sample a uniform rooted bipartite map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=default_seed())
    p.add_argument("--pointed", action="store_true",
                   help="keep the distinguished vertex in the output")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_sample_map)

    p = sub.add_parser("encode", help="export a path encoding of a mobile as CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--what", choices=["contour", "white", "label", "y", "height"],
                   required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("bdg", help="mobile to rooted-pointed map")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--eps", type=int, choices=[0, 1], default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_bdg)

    p = sub.add_parser("bdg-inverse", help="rooted-pointed map to mobile")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_bdg_inverse)

    p = sub.add_parser("validate", help="run structural invariants on a record")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("enumerate", help="exhaustive census at small size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default="enumeration")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("name")
    p.add_argument("--config", default=None, help="JSON config file (or '-')")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=default_seed())
    p.add_argument("--out", default="experiments-out")
    p.add_argument("--freeze", action="store_true",
                   help="write the resolved config next to the results")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        return _fail(3, str(exc))
    except (MalformedTree, json.JSONDecodeError, KeyError, ValueError) as exc:
        return _fail(2, str(exc))
    except BimapLabError as exc:
        return _fail(1, str(exc))


if __name__ == "__main__":
    sys.exit(main())
