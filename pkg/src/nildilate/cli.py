"""Command-line front end.

Subcommands: check (classification verdict as JSON), simulate (Weyl-sum
convergence table over the parameter grid), counterexample (the staircase
fixtures with their exact identity suites), bch-selftest (BCH vs the matrix
oracle).  Exit codes: 0 success (any verdict), 2 config error, 3 budget
exceeded.
"""

import argparse
import json
import sys
from fractions import Fraction

from .config import ConfigError, fixture_names, load_config, load_fixture
from .diagnostics import ConvergenceTable, weak_average_discrete, weyl_sum
from .measures import DilatedMeasure, oscillation_guard, sample
from .obstruction import Character, characters_up_to_height, classify

DEFAULT_BUDGET = 500_000_000


def _load(args):
    if getattr(args, "fixture", None):
        return load_fixture(args.fixture)
    if not args.config:
        raise ConfigError("config: provide --config PATH or --fixture NAME")
    return load_config(args.config)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_check(args):
    cfg = _load(args)
    height = args.height or cfg.height
    verdict = classify(cfg.target, cfg.family, cfg.algebra,
                       parameter=cfg.parameter, height=height)
    _emit(json.dumps(verdict.to_dict(), indent=2, sort_keys=True), args.out)
    return 0


def cmd_simulate(args):
    cfg = _load(args)
    height = args.height or cfg.height
    panels = args.panels or cfg.panels
    seed = args.seed if args.seed is not None else cfg.seed
    chars = list(characters_up_to_height(cfg.algebra.abelian_dim, height))

    est = 0
    for t in cfg.grid:
        est += len(chars) * (panels or oscillation_guard(t, cfg.family, 12))
    if est > args.budget:
        sys.stderr.write(f"estimated panel work {est:.3g} exceeds budget {args.budget:.3g}; "
                         f"lower --height, the grid, or --panels, or raise --budget\n")
        return 3

    table = ConvergenceTable(metadata={
        "seed": seed, "height": height, "panels": panels or "guard",
        "parameter": cfg.parameter,
    })
    for t in cfg.grid:
        mu = DilatedMeasure(cfg.target, cfg.base, cfg.family, t)
        for chi in chars:
            w = weyl_sum(chi, mu, panels=panels)
            table.add(t, "weyl_modulus", abs(w),
                      module="diagnostics", op="weyl_sum",
                      char=",".join(map(str, chi.k)), seed=seed)
    if args.discrepancy:
        from .diagnostics import character_discrepancy
        for t in cfg.grid:
            mu = DilatedMeasure(cfg.target, cfg.base, cfg.family, t)
            pts = sample(mu, args.discrepancy, seed)
            d = character_discrepancy(pts[:, : cfg.algebra.abelian_dim], height)
            table.add(t, "character_discrepancy", d,
                      module="diagnostics", op="character_discrepancy",
                      count=args.discrepancy, height=height, seed=seed)
    _emit(table.to_json() if args.format == "json" else table.to_csv(), args.out)
    return 0


def cmd_counterexample(args):
    from .cantor import (
        cantor_measure,
        counterexample_curve,
        line_slice_cover_bound,
        product_cantor,
        verify_self_similarity,
        verify_selfsimilar_measure,
    )
    from .measures import base_point
    from .presets import abelian_torus, scalar_family

    name = args.name
    if name.startswith("product-cantor"):
        d = int(name.split(":", 1)[1]) if ":" in name else 2
        spec = product_cantor(d, depth=args.depth)
        algebra = abelian_torus(d)
        family = scalar_family(d)
        label = f"product-cantor:{d}"
    elif name == "cantor-measure":
        spec = cantor_measure(depth=args.depth)
        algebra = abelian_torus(1)
        family = scalar_family(1)
        label = name
    elif name == "cantor-curve":
        from .measures import CurvePushforward
        spec = CurvePushforward(counterexample_curve(depth=args.depth))
        algebra = abelian_torus(2)
        family = scalar_family(2)
        label = name
    else:
        sys.stderr.write(f"unknown fixture {name!r}; available: cantor-measure, "
                         f"cantor-curve, product-cantor:<d>\n")
        return 2

    report = {"fixture": label, "depth": args.depth}
    verdict = classify(spec, family, algebra, height=args.height)
    report["verdict"] = verdict.to_dict()

    if name == "cantor-measure" or name.startswith("product-cantor"):
        devs = {m: verify_selfsimilar_measure(m, height=args.height, depth=max(args.depth, args.m + 8))
                for m in range(1, args.m + 1)}
        report["selfsimilar_max_deviation"] = max(devs.values())
        report["selfsimilar_by_m"] = {str(k): v for k, v in devs.items()}
    if name == "cantor-measure":
        report["weak_average_N3000"] = weak_average_discrete(
            Character((1,)), spec, base_point(algebra), family, 3000)
    if args.self_similarity:
        depth = args.grid_depth
        bad = 0
        residues = set()
        for j in range(3 ** (depth - 1)):
            u = Fraction(j, 3 ** depth)
            for b in (0, 1, 2):
                r = verify_self_similarity(u, b)
                residues.add(r)
                if r not in (0, 1):
                    bad += 1
        report["self_similarity_grid_depth"] = depth
        report["self_similarity_checked"] = 3 ** (depth - 1) * 3
        report["self_similarity_residues"] = sorted(residues)
        report["self_similarity_violations"] = bad
    if name == "cantor-curve":
        bounds = {}
        for p, q in [(1, 1), (1, -2), (3, 5), (2, 7)]:
            bounds[f"{p},{q}"] = float(line_slice_cover_bound(p, q, 20))
        report["line_slice_cover_bounds_depth20"] = bounds

    _emit(json.dumps(report, indent=2, sort_keys=True, default=float), args.out)
    return 0


def cmd_bch_selftest(args):
    import random

    from .matrixrep import (
        dynkin_series_on_matrices,
        mat_add,
        mat_exp_nilpotent,
        mat_is_zero,
        mat_log_unipotent,
        mat_mul,
        mat_scale,
    )
    from .presets import ALGEBRA_BUILDERS, REALIZATION_BUILDERS

    rng = random.Random(args.seed)

    def rand_vec(n):
        return tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(n))

    failures = 0
    for name, build in REALIZATION_BUILDERS.items():
        algebra = ALGEBRA_BUILDERS[name]()
        real = build(algebra)
        ok = all(
            algebra.bch(x, y) == real.bch_oracle(x, y)
            for x, y in ((rand_vec(algebra.dim), rand_vec(algebra.dim))
                         for _ in range(args.trials)))
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: structure-constant BCH == matrix "
              f"exp/log oracle on {args.trials} exact random pairs")
        failures += 0 if ok else 1

    size = 7  # strictly upper triangular 7x7: free check of the series table to depth 6
    def rand_sut():
        return [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if c > r else Fraction(0)
                 for c in range(size)] for r in range(size)]
    ok = True
    for _ in range(max(3, args.trials // 10)):
        X, Y = rand_sut(), rand_sut()
        direct = mat_log_unipotent(mat_mul(mat_exp_nilpotent(X), mat_exp_nilpotent(Y)))
        series = dynkin_series_on_matrices(X, Y, 6)
        ok = ok and mat_is_zero(mat_add(direct, mat_scale(series, -1)))
    print(f"[{'PASS' if ok else 'FAIL'}] free depth-6 series on strictly upper "
          f"triangular 7x7 matrices")
    failures += 0 if ok else 1
    return 1 if failures else 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="nildilate",
        description="Equidistribution of dilated measures and curves on nilmanifolds")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_config=True):
        if with_config:
            p.add_argument("--config", help="path to a JSON experiment config")
            p.add_argument("--fixture", help=f"stock config name ({', '.join(fixture_names())})")
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--height", type=int, default=None, help="character height bound")

    p_check = sub.add_parser("check", help="run the obstruction classifier")
    add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_sim = sub.add_parser("simulate", help="Weyl-sum table over the parameter grid")
    add_common(p_sim)
    p_sim.add_argument("--panels", type=int, default=None)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--budget", type=float, default=DEFAULT_BUDGET,
                       help="abort (exit 3) if the estimated panel work exceeds this")
    p_sim.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sim.add_argument("--discrepancy", type=int, default=0, metavar="COUNT",
                       help="also sample COUNT points per t and report character discrepancy")
    p_sim.set_defaults(func=cmd_simulate)

    p_ce = sub.add_parser("counterexample", help="staircase fixtures and exact identity suites")
    p_ce.add_argument("name", help="cantor-measure | cantor-curve | product-cantor:<d>")
    p_ce.add_argument("--m", type=int, default=3, help="largest exponent in the 3^m family")
    p_ce.add_argument("--depth", type=int, default=12)
    p_ce.add_argument("--height", type=int, default=5)
    p_ce.add_argument("--self-similarity", action="store_true",
                      help="check the exact staircase identity on a ternary grid")
    p_ce.add_argument("--grid-depth", type=int, default=10)
    p_ce.add_argument("--out", default=None)
    p_ce.set_defaults(func=cmd_counterexample)

    p_self = sub.add_parser("bch-selftest", help="BCH vs exact matrix oracle")
    p_self.add_argument("--trials", type=int, default=25)
    p_self.add_argument("--seed", type=int, default=0)
    p_self.set_defaults(func=cmd_bch_selftest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
