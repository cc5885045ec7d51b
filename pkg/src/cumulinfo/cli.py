"""Command line interface: CSV ingestion, feature augmentation and reports.

Exit codes: 0 success, 2 input error, 3 degenerate data, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .baseline import expected_fraction, expected_fraction_mc
from .estimators import DataError, Dataset, DegenerateError, Orientation
from .search import BudgetExceeded, SearchConfig, branch_and_bound, exhaustive
from .synthdata import (
    GeneratorSpec,
    bivariate_normal_suite,
    friedman1,
    generate,
    independent_uniform_builder,
    linear_builder,
    power_analysis,
)
from .tcmi import score_subset

SCHEMA_VERSION = 1
RESULT_COLUMNS = ("subset", "selection_score", "assessment_score", "d_forward", "d_reverse",
                  "baseline_forward", "baseline_reverse")
MIN_ROWS = 3


def load_csv(path, target_name: str) -> Dataset:
    """Read a header-first numeric CSV and split off ``target_name``."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataError("empty file")
    header = [h.strip() for h in rows[0]]
    seen = set()
    for h in header:
        if h in seen:
            raise DataError(f"duplicate column: {h}")
        seen.add(h)
    if target_name not in seen:
        raise DataError(f"target not found: {target_name}")
    body = [r for r in rows[1:] if r]
    if len(body) < MIN_ROWS:
        raise DataError(f"too few samples: {len(body)} rows, need at least {MIN_ROWS}")
    data = np.empty((len(body), len(header)))
    for i, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise DataError(f"parse error at row {i}: expected {len(header)} cells, found {len(row)}")
        for j, cell in enumerate(row):
            cell = cell.strip()
            if not cell:
                raise DataError(f"parse error at row {i}, col {header[j]}: missing value")
            try:
                v = float(cell)
            except ValueError:
                raise DataError(f"parse error at row {i}, col {header[j]}: {cell!r}") from None
            if not np.isfinite(v):
                raise DataError(f"parse error at row {i}, col {header[j]}: non-finite value")
            data[i - 2, j] = v
    return Dataset({h: data[:, j] for j, h in enumerate(header)}, target_name)


def write_csv(dataset: Dataset, fh) -> None:
    """Write ``dataset`` with 17 significant digits, target column first."""
    names = [dataset.target_name] + dataset.feature_names
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(names)
    cols = [dataset.columns[c] for c in names]
    for i in range(dataset.n_rows):
        w.writerow([format(float(c[i]), ".17g") for c in cols])


def _rank_key(values: np.ndarray) -> bytes:
    return np.unique(values, return_inverse=True)[1].astype(np.int64).tobytes()


def augment(dataset: Dataset, transforms) -> Dataset:
    """Append ``-X`` (``_neg``) and ``|X|`` (``_abs``) columns for each
    original feature, skipping columns order-isomorphic to an existing one."""
    unknown = set(transforms) - {"negate", "abs"}
    if unknown:
        raise DataError(f"unknown augmentation: {','.join(sorted(unknown))}")
    transforms = [t for t in ("negate", "abs") if t in set(transforms)]
    funcs = {"negate": ("_neg", np.negative), "abs": ("_abs", np.abs)}
    originals = dataset.feature_names
    known = {_rank_key(dataset.columns[c]) for c in originals}
    extra = {}
    for name in originals:
        for t in transforms:
            suffix, fn = funcs[t]
            values = fn(dataset.columns[name])
            key = _rank_key(values)
            if key in known:
                continue
            new = name + suffix
            if new in dataset.columns or new in extra:
                raise DataError(f"augmentation name clash: {new}")
            extra[new] = values
            known.add(key)
    return dataset.with_columns(extra)


def _parse_augment(text):
    if not text:
        return []
    items = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in items if t not in ("negate", "abs")]
    if bad:
        raise DataError(f"unknown augmentation: {','.join(bad)}")
    return items


def _load(args) -> Dataset:
    if not args.data:
        raise DataError("--data is required")
    if not Path(args.data).is_file():
        raise DataError(f"no such file: {args.data}")
    ds = load_csv(args.data, args.target)
    transforms = _parse_augment(getattr(args, "augment", None))
    return augment(ds, transforms) if transforms else ds


def _subset(text, dataset: Dataset):
    names = [s.strip() for s in (text or "").split(",") if s.strip()]
    if not names:
        raise DataError("--subset is required")
    for n in names:
        if n not in dataset.columns or n == dataset.target_name:
            raise DataError(f"no such column: {n}")
    return names


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "tsv":
        table = report.get("power") or report.get("baseline")
        if table:
            cols = list(table[0])
            out.write("\t".join(cols) + "\n")
            for r in table:
                out.write("\t".join(str(r[c]) for c in cols) + "\n")
            return
        out.write("\t".join(RESULT_COLUMNS) + "\n")
        for r in report["results"]:
            cells = [",".join(r["subset"])] + [repr(float(r[c])) for c in RESULT_COLUMNS[1:]]
            out.write("\t".join(cells) + "\n")
        return
    out.write(json.dumps(report, indent=2, sort_keys=False) + "\n")


def _report(command, config, results=(), stats=None, extra=None, started=None) -> dict:
    rep = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "version": __version__,
        "config": config,
        "results": list(results),
        "stats": stats or {},
    }
    if extra:
        rep.update(extra)
    rep["timing_seconds"] = round(time.perf_counter() - started, 6) if started else 0.0
    return rep


def cmd_score(args, started):
    ds = _load(args)
    names = _subset(args.subset, ds)
    s = score_subset(ds, names, args.grid, shuffle_correction=args.shuffle_correction, seed=args.seed)
    config = {"data": args.data, "target": args.target, "subset": names, "grid": args.grid,
              "augment": args.augment or "", "shuffle_correction": args.shuffle_correction, "seed": args.seed}
    return _report("score", config, [s.as_record()], {"evaluated_nodes": 1, "pruned_nodes": 0}, started=started)


def cmd_select(args, started):
    ds = _load(args)
    mode = {"bnb": "branch_and_bound", "exhaustive": "exhaustive"}[args.mode]
    cfg = SearchConfig(max_dim=min(args.max_dim, len(ds.feature_names)), top_k=args.top_k,
                       grid_strategy=args.grid, mode=mode, workers=args.threads)
    res = (branch_and_bound if mode == "branch_and_bound" else exhaustive)(ds, cfg)
    config = {"data": args.data, "target": args.target, "max_dim": cfg.max_dim, "top_k": args.top_k,
              "grid": args.grid, "mode": args.mode, "augment": args.augment or "", "seed": args.seed}
    stats = {"evaluated_nodes": res.evaluated_nodes, "pruned_nodes": res.pruned_nodes}
    return _report("select", config, [s.as_record() for s in res.top(args.top_k)], stats, started=started)


SUITES = ("table3", "friedman1", "friedman1-correlated", "bivariate-normal")
TABLE3 = (("linear", 0), ("exponential", 0), ("step", 2), ("step", 4), ("step", 8),
          ("uniform_random", 0), ("sawtooth", 8), ("sawtooth", 4), ("sawtooth", 2), ("constant", 0))


def _suite(name, n, seed) -> Dataset:
    if name == "table3":
        cols = {}
        for kind, p in TABLE3:
            label = kind if not p else f"{kind}{p}"
            cols[label] = generate(GeneratorSpec(kind, n, p, seed))
        return Dataset.from_arrays(generate(GeneratorSpec("linear", n)), cols, target_name="y")
    if name == "friedman1":
        return friedman1(n, seed)
    if name == "friedman1-correlated":
        return friedman1(n, seed, include_correlated=True)
    return bivariate_normal_suite(n, seed)


def cmd_generate(args, started):
    ds = _suite(args.suite, args.n, args.seed)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_csv(ds, fh)
        config = {"suite": args.suite, "n": args.n, "seed": args.seed, "out": args.out}
        stats = {"rows": ds.n_rows, "features": len(ds.feature_names)}
        return _report("generate", config, [], stats, started=started)
    buf = io.StringIO()
    write_csv(ds, buf)
    sys.stdout.write(buf.getvalue())
    return None


def cmd_power(args, started):
    sigmas = [float(s) for s in args.sigma.split(",")]
    if args.suite == "linear":
        builder, subset = linear_builder(args.n), ["x"]
    else:
        builder, subset = independent_uniform_builder(args.n, 1), ["x1"]
    rep = power_analysis(builder, subset, sigmas, args.gamma, args.repeats, args.seed, args.grid, args.threads)
    rows = [{"sigma": s, "power": p, "mean_score": m, "contrast": c}
            for s, p, m, c in zip(rep.sigma_levels, rep.power, rep.mean_score, rep.contrast)]
    config = {"suite": args.suite, "n": args.n, "sigma": sigmas, "gamma": args.gamma,
              "repeats": args.repeats, "grid": args.grid, "seed": args.seed}
    return _report("power", config, [], {}, {"power": rows, "independence_percentile": rep.independence_percentile},
                   started=started)


def cmd_baseline_check(args, started):
    ds = _load(args)
    names = _subset(args.subset, ds)
    rows = []
    for o in (Orientation.FORWARD, Orientation.REVERSE):
        cf = expected_fraction(ds, names, args.grid, o)
        mc = expected_fraction_mc(ds, names, args.grid, o, args.repeats, args.seed, args.threads)
        z = (cf.value - mc.value) / mc.stderr if mc.stderr > 0 else (0.0 if cf.value == mc.value else float("inf"))
        rows.append({"orientation": o.value, "closed_form": cf.value, "monte_carlo": mc.value,
                     "stderr": mc.stderr, "z": z, "within_3se": bool(abs(z) <= 3.0)})
    config = {"data": args.data, "target": args.target, "subset": names, "grid": args.grid,
              "permutations": args.repeats, "seed": args.seed}
    return _report("baseline-check", config, [], {}, {"baseline": rows}, started=started)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cumulinfo", description="Total cumulative mutual information tools")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, data=True):
        if data:
            p.add_argument("--data")
            p.add_argument("--target", default="y")
            p.add_argument("--augment", default="")
        p.add_argument("--grid", choices=("full", "sample"), default="sample")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--output", choices=("json", "tsv"), default="json")

    p = sub.add_parser("score", help="score one feature subset")
    common(p)
    p.add_argument("--subset")
    p.add_argument("--shuffle-correction", action="store_true")

    p = sub.add_parser("select", help="search for the best feature subset")
    common(p)
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--mode", choices=("bnb", "exhaustive"), default="bnb")

    p = sub.add_parser("generate", help="write a synthetic suite as CSV")
    p.add_argument("--suite", choices=SUITES, default="table3")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--output", choices=("json", "tsv"), default="json")

    p = sub.add_parser("power", help="statistical power under target noise")
    common(p, data=False)
    p.add_argument("--suite", choices=("linear", "independent"), default="linear")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--sigma", default="0,0.2,0.4,0.6,0.8,1.0")
    p.add_argument("--gamma", type=float, default=0.95)
    p.add_argument("--repeats", type=int, default=500)

    p = sub.add_parser("baseline-check", help="closed-form baseline against permutations")
    common(p)
    p.add_argument("--subset")
    p.add_argument("--repeats", type=int, default=1000)
    return parser


COMMANDS = {"score": cmd_score, "select": cmd_select, "generate": cmd_generate,
            "power": cmd_power, "baseline-check": cmd_baseline_check}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        report = COMMANDS[args.cmd](args, started)
    except DegenerateError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (DataError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if report is not None:
        _emit(report, args.output, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
