"""Command-line entry point ``symplt``."""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import experiments as ex
from .errors import SingularMatrixError, SympltError
from .factor import factorize
from .generators import FAMILIES, GeneratorSpec
from .linalg import condition_number, read_matrix_csv, two_norm, write_matrix_csv
from .symplectic import DEFAULT_TOL, symplecticity_defect


def _stem(path: Path) -> Path:
    return path.with_suffix("") if path.suffix == ".csv" else path


def cmd_factor(args) -> int:
    a = read_matrix_csv(args.input)
    out = factorize(a, args.algorithm)
    n = out.factor.n
    stem = Path(args.stem) if args.stem else _stem(Path(args.input))
    write_matrix_csv(f"{stem}.l11.csv", out.factor.l11.matrix)
    write_matrix_csv(f"{stem}.l21.csv", out.factor.l21)
    write_matrix_csv(f"{stem}.l22.csv", out.factor.l22.matrix)
    norm_l = two_norm(out.factor.assemble()).value
    report = {
        "dec": out.dec,
        "delta_l": out.residual.delta_l,
        "symp_l": out.residual.delta_l / norm_l**2,
        "f11_norm": out.residual.f11_norm,
        "f12_norm": out.residual.f12_norm,
        "kappa_a": condition_number(a),
        "kappa_a11": condition_number(a[:n, :n]),
    }
    text = json.dumps(report, indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_check(args) -> int:
    a = read_matrix_csv(args.input)
    d = symplecticity_defect(a)
    try:
        kappa = condition_number(a)
    except SingularMatrixError:
        kappa = math.inf
    ok = d.symp_rel <= args.tol
    print(f"Delta(A)   {d.delta:.4e}")
    print(f"sympA      {d.symp_rel:.4e}")
    print(f"||A||_2    {d.norm_x:.4e}")
    print(f"kappa_2(A) {kappa:.4e}")
    print(f"symplectic {'yes' if ok else 'no'} (sympA <= {args.tol:g})")
    return 0 if ok else 1


def cmd_gen(args) -> int:
    spec = GeneratorSpec.from_json(args.params or "{}", family=args.family)
    write_matrix_csv(args.out, spec.build())
    return 0


def cmd_experiment(args) -> int:
    cfg = ex.RunConfig(
        experiment_id=args.id,
        seed=args.seed,
        n_max=args.n_max,
        inverse_method=args.inverse,
        fmt=args.format,
        out=args.out,
    )
    start = time.perf_counter()
    stats = ex.run_experiment(cfg)
    written = ex.write_outputs(cfg, stats)
    failed = sum(not s.ok for s in stats)
    print(
        f"experiment {cfg.experiment_id}: {len(stats)} rows ({failed} failed) "
        f"in {time.perf_counter() - start:.2f}s -> {', '.join(map(str, written))}",
        file=sys.stderr,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="symplt",
        description="Symplectic LL^T factorization of SPD symplectic matrices.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="factor a matrix read from CSV",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    f.add_argument("--input", required=True, help="matrix CSV (2n x 2n, symmetric)")
    f.add_argument("--algorithm", choices=("w1", "w2"), default="w2")
    f.add_argument("--report", help="write the JSON report here instead of stdout")
    f.add_argument("--stem", help="prefix for the L-block CSVs (default: input path without .csv)")
    f.set_defaults(func=cmd_factor)

    c = sub.add_parser("check", help="measure loss of symplecticity of a matrix",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    c.add_argument("--input", required=True)
    c.add_argument("--tol", type=float, default=DEFAULT_TOL, help="threshold on sympA")
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", help="generate a test matrix",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--params", default="{}", help='JSON, e.g. \'{"n": 5, "s": 3, "seed": 0}\'')
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("experiment", help="reproduce one of the five experiments",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    e.add_argument("--id", type=int, required=True, choices=range(1, 6), metavar="{1..5}")
    e.add_argument("--seed", type=int, default=0, help="master seed (experiments 3 and 5)")
    e.add_argument("--n-max", type=int, default=250, help="largest n for experiment 5 (even)")
    e.add_argument("--inverse", choices=("symplectic", "lu"), default="symplectic",
                   help="how experiment 2 inverts S^T S")
    e.add_argument("--format", choices=("markdown", "csv", "json"), default="markdown")
    e.add_argument("--out", required=True, help="table path; experiment 5 adds <stem>.fig*.csv beside it")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SympltError, ValueError, OSError, OverflowError) as exc:
        print(f"symplt {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
