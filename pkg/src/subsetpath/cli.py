"""Command-line surface: simulate, path, fit, oracle, metrics.

Exit codes are stable API: 0 success, 2 parse error, 3 dimension error,
4 solver abort, 5 singular system, 6 size guard. CSV files are RFC-4180
with an optional auto-detected header row; floats are serialized at full
round-trip precision. Every command writes a manifest.json recording the
resolved configuration and input checksums.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .components import PickStrategy, fit, model_to_dict, predict, q2
from .errors import (
    DimensionError,
    ParseError,
    SingularMatrixError,
    SizeGuardError,
    SolverAbort,
)
from .linalg import center_columns
from .oracle import exhaustive_path, oracle_to_dict
from .path import GridConfig, Subset, dynamic_grid, path_to_dict
from .simulate import SimConfig, generate, metrics
from .solver import SolverConfig

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_SOLVER = 4
EXIT_SINGULAR = 5
EXIT_GUARD = 6


def read_csv_matrix(path: str) -> np.ndarray:
    """Read a numeric CSV, skipping a single non-numeric header row."""
    rows = []
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            for i, row in enumerate(reader):
                if not row:
                    continue
                try:
                    rows.append([float(x) for x in row])
                except ValueError as exc:
                    if i == 0 and not rows:
                        continue  # header row
                    bad = next(
                        (j for j, x in enumerate(row) if not _is_float(x)), None
                    )
                    raise ParseError(
                        f"{path}: non-numeric value at row {i + 1}, column "
                        f"{(bad or 0) + 1}"
                    ) from exc
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ParseError(f"{path}: no data rows")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"{path}: row {i + 1} has {len(row)} fields, expected {width}")
    return np.asarray(rows, dtype=float)


def _is_float(x: str) -> bool:
    try:
        float(x)
        return True
    except ValueError:
        return False


def write_csv_matrix(path: Path, A: np.ndarray, header: list[str] | None = None):
    A = np.atleast_2d(np.asarray(A, dtype=float))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        if header:
            writer.writerow(header)
        for row in A:
            writer.writerow([repr(float(x)) for x in row])


def write_csv_rows(path: Path, rows: list[list], header: list[str]):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [repr(float(x)) if isinstance(x, float) else x for x in row]
            )


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(outdir: Path, command: str, args: argparse.Namespace,
                   started: float, inputs: list[str]):
    flags = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("func", "command") and v is not None
    }
    manifest = {
        "command": command,
        "version": __version__,
        "flags": flags,
        "seed": getattr(args, "seed", None),
        "duration_seconds": time.time() - started,
        "inputs": [{"path": p, "sha256": _sha256(p)} for p in inputs],
    }
    with open(outdir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_xy(args, need_y: bool):
    X = read_csv_matrix(args.x)
    Y = read_csv_matrix(args.y) if args.y else None
    if need_y and Y is None:
        raise DimensionError(f"model {args.model} requires --y")
    if args.model == "pca" and Y is not None:
        raise DimensionError("pca takes no --y")
    if not getattr(args, "no_center", False):
        X = center_columns(X)
        if Y is not None:
            Y = Y - Y.mean(axis=0)
    return X, Y


def cmd_simulate(args) -> int:
    out = _outdir(args)
    started = time.time()
    cfg = SimConfig(
        scenario=args.scenario, n=args.n, p=args.p, q=args.q,
        H=args.components, sigma=args.sigma, gamma=args.gamma,
        snr=args.snr, holdout=args.holdout, seed=args.seed,
    )
    try:
        inst = generate(cfg)
    except (ValueError, DimensionError) as exc:
        raise ParseError(f"invalid scenario parameters: {exc}") from exc
    write_csv_matrix(out / "X.csv", inst.X)
    if inst.Y is not None:
        name = "y.csv" if args.scenario == "univariate" else "Y.csv"
        write_csv_matrix(out / name, inst.Y)
    if inst.X_test is not None:
        write_csv_matrix(out / "X_test.csv", inst.X_test)
        if inst.Y_test is not None:
            write_csv_matrix(out / "Y_test.csv", inst.Y_test)
    with open(out / "truth.json", "w", encoding="utf-8") as fh:
        json.dump(inst.truth, fh, indent=2)
    write_manifest(out, "simulate", args, started, [])
    return EXIT_OK


def _solver_config(args) -> SolverConfig:
    return SolverConfig(method=args.solver, seed=args.seed)


def cmd_path(args) -> int:
    out = _outdir(args)
    started = time.time()
    X, Y = _load_xy(args, need_y=args.model in ("pls1", "pls2"))
    if args.k_max > X.shape[1]:
        raise DimensionError(f"--k-max {args.k_max} exceeds p={X.shape[1]}")
    grid = GridConfig(K=args.k_max, L=args.budget, rho=args.rho)
    path = dynamic_grid(X, Y, args.model, grid, _solver_config(args),
                        threads=args.threads)
    with open(out / "path.json", "w", encoding="utf-8") as fh:
        json.dump(path_to_dict(path), fh, indent=2)
    write_csv_rows(
        out / "lambda_grid.csv",
        [[lam, size] for lam, size in path.lambda_grid],
        header=["lambda", "terminal_size"],
    )
    write_manifest(out, "path", args, started,
                   [p for p in (args.x, args.y) if p])
    return EXIT_OK


def cmd_fit(args) -> int:
    out = _outdir(args)
    started = time.time()
    X = read_csv_matrix(args.x)
    Y = read_csv_matrix(args.y) if args.y else None
    if args.model in ("pls1", "pls2") and Y is None:
        raise DimensionError(f"model {args.model} requires --y")
    if args.model == "pca" and Y is not None:
        raise DimensionError("pca takes no --y")
    strategy = PickStrategy.parse(args.pick)
    if strategy.kind in ("min-msep", "max-cor"):
        strategy = PickStrategy(kind=strategy.kind, folds=args.folds)
    p = X.shape[1]
    if args.k_max is not None and args.k_max > p:
        raise DimensionError(f"--k-max {args.k_max} exceeds p={p}")
    grid = GridConfig(K=args.k_max or p, L=args.budget, rho=args.rho)
    test = None
    if args.test:
        test = (read_csv_matrix(args.test[0]), read_csv_matrix(args.test[1]))
    result = fit(
        X, Y, model=args.model, H=args.components, strategy=strategy,
        mode=args.mode, grid_cfg=grid, solver_cfg=_solver_config(args),
        center=not args.no_center, test=test, threads=args.threads,
    )
    with open(out / "model.json", "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(result), fh, indent=2)

    q2_values = [None] * result.H
    if result.model != "pca" and result.mode == "regression":
        report = q2(
            X, Y, model=result.model, H=result.H, folds=args.folds,
            seed=args.seed, supports=[c.subset for c in result.components],
        )
        q2_values = [float(v) for v in report.total]
    rows = []
    for i, comp in enumerate(result.components):
        rows.append([
            comp.h, comp.subset.size,
            float(result.pev[i]), float(result.cpev[i]),
            "" if q2_values[i] is None else q2_values[i],
        ])
    write_csv_rows(out / "report.csv", rows,
                   header=["component", "k", "pev", "cpev", "q2"])

    if args.test and result.beta is not None:
        preds = predict(result, test[0])
        write_csv_matrix(out / "predictions.csv", preds)
    write_manifest(out, "fit", args, started,
                   [p for p in (args.x, args.y, *(args.test or [])) if p])
    return EXIT_OK


def cmd_oracle(args) -> int:
    out = _outdir(args)
    started = time.time()
    X, Y = _load_xy(args, need_y=args.model in ("pls1", "pls2"))
    result = exhaustive_path(X, Y, args.model, max_k=args.max_k)
    with open(out / "oracle.json", "w", encoding="utf-8") as fh:
        json.dump(oracle_to_dict(result), fh, indent=2)
    if args.compare:
        try:
            with open(args.compare, encoding="utf-8") as fh:
                heur = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read {args.compare}: {exc}") from exc
        heur_bits = {b["k"]: b["bits"] for b in heur.get("buckets", [])}
        rows = []
        for k in sorted(result.per_size):
            ob = result.per_size[k][0].bitstring()
            hb = heur_bits.get(k, "")
            rows.append([k, hb, ob, int(hb == ob)])
        write_csv_rows(out / "compare.csv", rows,
                       header=["k", "heuristic_bits", "oracle_bits", "match"])
    write_manifest(out, "oracle", args, started,
                   [p for p in (args.x, args.y, args.compare) if p])
    return EXIT_OK


def _parse_subset(text: str, p: int) -> Subset:
    if set(text) <= {"0", "1"} and len(text) == p:
        return Subset.from_bitstring(text)
    try:
        indices = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseError(f"cannot parse subset {text!r}") from exc
    if any(j < 0 or j >= p for j in indices):
        raise DimensionError(f"subset index out of range 0..{p - 1}")
    return Subset.from_indices(p, indices)


def cmd_metrics(args) -> int:
    started = time.time()
    try:
        with open(args.truth, encoding="utf-8") as fh:
            truth = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {args.truth}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.truth}: {exc}") from exc
    p = args.p or truth.get("p")
    if p is None:
        raise ParseError("truth file does not record p; pass --p")
    s_true = Subset.from_indices(p, truth["support"])
    s_hat = _parse_subset(args.subset, p)
    Y_hat = read_csv_matrix(args.pred) if args.pred else None
    Y_test = read_csv_matrix(args.test) if args.test else None
    report = metrics(s_hat, s_true, Y_hat, Y_test)
    row = [
        "" if report.msep is None else repr(report.msep),
        "" if report.sensitivity is None else repr(report.sensitivity),
        "" if report.specificity is None else repr(report.specificity),
        "" if report.f1 is None else repr(report.f1),
    ]
    text = "msep,sensitivity,specificity,f1\r\n" + ",".join(row) + "\r\n"
    if args.out:
        out = _outdir(args)
        with open(out / "metrics.csv", "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        write_manifest(out, "metrics", args, started,
                       [f for f in (args.pred, args.truth, args.test) if f])
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subsetpath",
        description="Best-subset solution paths for PCA and PLS models.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="generate a benchmark dataset")
    sim.add_argument("--scenario", required=True,
                     choices=["multiresponse", "two-component", "univariate", "pca-cov"])
    sim.add_argument("--n", type=int, default=100)
    sim.add_argument("--p", type=int, default=15)
    sim.add_argument("--q", type=int, default=10)
    sim.add_argument("--components", type=int, default=1)
    sim.add_argument("--sigma", type=float, default=3.0)
    sim.add_argument("--gamma", type=int, default=5)
    sim.add_argument("--snr", type=float, default=3.0)
    sim.add_argument("--holdout", type=int, default=0)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_simulate)

    def common_model_flags(p_):
        p_.add_argument("--model", required=True, choices=["pls1", "pls2", "pca"])
        p_.add_argument("--x", required=True)
        p_.add_argument("--y")
        p_.add_argument("--seed", type=int, default=0)
        p_.add_argument("--no-center", action="store_true")
        p_.add_argument("--out", required=True)

    pth = sub.add_parser("path", help="compute a best-subset solution path")
    common_model_flags(pth)
    pth.add_argument("--k-max", type=int, required=True)
    pth.add_argument("--budget", type=int, default=50)
    pth.add_argument("--rho", type=float, default=0.9)
    pth.add_argument("--solver", choices=["adam", "gd"], default="adam")
    pth.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    pth.set_defaults(func=cmd_path)

    fit_p = sub.add_parser("fit", help="fit a multi-component sparse model")
    common_model_flags(fit_p)
    fit_p.add_argument("--components", type=int, default=1)
    fit_p.add_argument("--mode", choices=["regression", "canonical"],
                       default="regression")
    fit_p.add_argument("--pick", required=True,
                       help="fixed-k=K | cpev-drop=F | min-msep | max-cor")
    fit_p.add_argument("--folds", type=int, default=5)
    fit_p.add_argument("--k-max", type=int, default=None)
    fit_p.add_argument("--budget", type=int, default=50)
    fit_p.add_argument("--rho", type=float, default=0.9)
    fit_p.add_argument("--solver", choices=["adam", "gd"], default="adam")
    fit_p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    fit_p.add_argument("--test", nargs=2, metavar=("X_TEST", "Y_TEST"))
    fit_p.set_defaults(func=cmd_fit)

    orc = sub.add_parser("oracle", help="exhaustive best subsets (small p)")
    common_model_flags(orc)
    orc.add_argument("--max-k", type=int, default=None)
    orc.add_argument("--compare", help="path.json to compare against")
    orc.set_defaults(func=cmd_oracle)

    met = sub.add_parser("metrics", help="selection/prediction metrics")
    met.add_argument("--pred")
    met.add_argument("--truth", required=True)
    met.add_argument("--test")
    met.add_argument("--subset", required=True,
                     help="bit string or space/comma separated indices")
    met.add_argument("--p", type=int, default=None)
    met.add_argument("--out")
    met.set_defaults(func=cmd_metrics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except SolverAbort as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except SingularMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
