"""Command line entry point.

    aquasim run scenario.json --out DIR [--seed N] [--dump-grid EVERY_N]
    aquasim matrix --out DIR --seed N [--jobs K]
    aquasim compare trajectory.csv historical.csv --out FILE

Exit status is 0 on success, 1 when a simulation fails and 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import analytics
from .config import ConfigError, TuningDefaults, config_code, config_from_dict
from .engine import SUMMARY_COLUMNS, run_matrix, run_pre_experiment

EXIT_OK, EXIT_RUNTIME, EXIT_INPUT = 0, 1, 2
SEED_ENV = "AQUASIM_SEED"

log = logging.getLogger("aquasim.cli")


class InputError(Exception):
    """Bad user input; reported with exit status 2."""


def _num(v) -> str:
    # repr round-trips exactly and always uses '.'
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.generic):
        return _jsonable(v.item())
    return v


def _write_json(path: Path, data) -> None:
    path.write_text(json.dumps(_jsonable(data), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _env_seed() -> int | None:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return None
    try:
        seed = int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None
    if seed < 0:
        raise InputError(f"{SEED_ENV} must be non-negative")
    return seed


def _read_json_object(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: scenario must be a JSON object")
    return data


def cmd_run(args) -> int:
    data = _read_json_object(args.scenario)
    if args.seed is not None:
        data["seed"] = args.seed
    elif "seed" not in data and _env_seed() is not None:
        data["seed"] = _env_seed()
    config = config_from_dict(data)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    sink = None
    if args.dump_grid:
        frames = out / "frames"
        frames.mkdir(exist_ok=True)
        sink = lambda g, epoch, text: (frames / f"gen{g}_epoch{epoch:05d}.txt").write_text(text, encoding="utf-8")  # noqa: E731

    best, results = run_pre_experiment(config, frame_every=args.dump_grid, frame_sink=sink)

    for r in results:
        _write_csv(out / f"trajectory_gen{r.generation_index}.csv", ("epoch", "mean_size"),
                   [(int(e), _num(m)) for e, m in r.trajectory])
    _write_csv(out / "histogram_best.csv", ("bin_lo", "bin_hi", "count"),
               [(i, i + 1, int(c)) for i, c in enumerate(best.histogram)])
    summary = {
        "config": config.to_dict(),
        "code": config_code(config),
        "best_generation": best.generation_index,
        "best": {**best.summary(), "weeks": analytics.epochs_to_weeks(best.epochs_used)},
        "generations": [r.summary() for r in results],
    }
    _write_json(out / "summary.json", summary)
    log.info("%s: best generation %d, %d epochs", summary["code"], best.generation_index, best.epochs_used)
    return EXIT_OK


def cmd_matrix(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    if seed is None:
        raise InputError(f"a seed is required (--seed or {SEED_ENV})")
    if seed < 0:
        raise InputError("--seed must be non-negative")
    if args.jobs < 1:
        raise InputError("--jobs must be >= 1")
    overrides = {}
    if args.overrides:
        overrides = _read_json_object(args.overrides)
        fixed = sorted({"disposition", "feeding_mode", "density", "seed"} & set(overrides))
        if fixed:
            raise InputError(f"{args.overrides}: key {fixed[0]!r} is set by the matrix itself")
        # validate through the scenario parser so unknown keys are named
        config_from_dict({"disposition": "U", "feeding_mode": "N", "density": "I", "seed": 0, **overrides})
    tuning_keys = {f.name for f in dataclasses.fields(TuningDefaults)}
    tuning = TuningDefaults(**{k: v for k, v in overrides.items() if k in tuning_keys})
    config_kw = {k: v for k, v in overrides.items() if k not in tuning_keys}

    result = run_matrix(tuning, seed=seed, jobs=args.jobs, generations=args.generations, **config_kw)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "results.csv", SUMMARY_COLUMNS,
               [[row[c] if c == "config" else _num(row[c]) for c in SUMMARY_COLUMNS] for row in result.rows])
    return EXIT_OK


def _read_rows(path: str) -> list[list[str]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except (OSError, UnicodeDecodeError, csv.Error) as exc:
        raise InputError(f"{path}: {exc}") from None
    if not rows:
        raise InputError(f"{path}: empty file")
    return rows


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def load_trajectory(path: str) -> np.ndarray:
    """(epoch, mean_size) points from a trajectory CSV or a results.csv."""
    rows = _read_rows(path)
    header = [c.strip() for c in rows[0]]
    if "epoch" in header and "mean_size" in header:
        xi, yi = header.index("epoch"), header.index("mean_size")
    elif "epochs" in header and "mean_size" in header:
        xi, yi = header.index("epochs"), header.index("mean_size")
    else:
        raise InputError(f"{path}: expected an 'epoch,mean_size' or results.csv header")
    pts = []
    for n, r in enumerate(rows[1:], start=2):
        try:
            pts.append((float(r[xi]), float(r[yi])))
        except (IndexError, ValueError):
            raise InputError(f"{path}:{n}: malformed row") from None
    return np.array(pts, dtype=float).reshape(-1, 2)


def load_historical(path: str, pond_col: int = 0, week_col: int = 1, weight_col: int = 2,
                    pond: str | None = None) -> dict[str, np.ndarray]:
    """Per-pond (week, mean_weight) arrays from the 7-column historical format.

    A header row is detected by a non-numeric week field.  The four columns
    not mapped are ignored.  Weeks within a pond must be distinct.
    """
    rows = _read_rows(path)
    if not _is_number(rows[0][week_col].strip() if len(rows[0]) > week_col else ""):
        rows = rows[1:]
    ponds: dict[str, list[tuple[float, float]]] = {}
    for n, r in enumerate(rows, start=1):
        if len(r) != 7:
            raise InputError(f"{path}: row {n} has {len(r)} columns, expected 7")
        try:
            pid = r[pond_col].strip()
            week, weight = float(r[week_col]), float(r[weight_col])
        except (IndexError, ValueError):
            raise InputError(f"{path}: row {n} is malformed") from None
        if pond is not None and pid != pond:
            continue
        ponds.setdefault(pid, []).append((week, weight))
    out = {}
    for pid, pts in ponds.items():
        arr = np.array(sorted(pts), dtype=float)
        if np.any(np.diff(arr[:, 0]) <= 0):
            raise InputError(f"{path}: pond {pid!r} has repeated weeks")
        out[pid] = arr
    if not any(len(a) >= 2 for a in out.values()):
        raise InputError(f"{path}: no pond has two or more weeks")
    return out


def _line(points: np.ndarray) -> dict:
    try:
        fit = analytics.linear_regression(points)
    except analytics.AnalyticsError as exc:
        raise InputError(str(exc)) from None
    return {"slope": fit.slope, "intercept": fit.intercept,
            "mse": analytics.mse_vs_regression(points), "points": int(len(points))}


def cmd_compare(args) -> int:
    sim = load_trajectory(args.simulated)
    hist = load_historical(args.historical, args.pond_col, args.week_col, args.weight_col, args.pond)
    hist_pts = np.concatenate([a for a in hist.values()])
    weeks_span = float(max(a[-1, 0] - a[0, 0] for a in hist.values()))
    result = {
        "simulated": {**_line(sim), "x_unit": "epoch"},
        "historical": {**_line(hist_pts), "x_unit": "week", "ponds": sorted(hist)},
        "epochs_per_week": analytics.weeks_to_epochs(1.0),
        "historical_span_weeks": weeks_span,
        "historical_span_epochs": analytics.weeks_to_epochs(weeks_span),
    }
    out = Path(args.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    _write_json(out, result)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aquasim", description="Shrimp-pond feed distribution simulator.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="one 10-generation pre-experiment from a scenario file")
    r.add_argument("scenario")
    r.add_argument("--out", required=True)
    r.add_argument("--seed", type=int)
    r.add_argument("--dump-grid", type=int, metavar="EVERY_N", help="write a text frame every N epochs")
    r.set_defaults(func=cmd_run)

    m = sub.add_parser("matrix", help="all 16 configurations")
    m.add_argument("--out", required=True)
    m.add_argument("--seed", type=int)
    m.add_argument("--jobs", type=int, default=1)
    m.add_argument("--generations", type=int, default=10, help=argparse.SUPPRESS)
    m.add_argument("--overrides", metavar="JSON", help="tuning/config overrides applied to every run")
    m.set_defaults(func=cmd_matrix)

    c = sub.add_parser("compare", help="regression lines of a simulated and a historical growth curve")
    c.add_argument("simulated", help="trajectory CSV (epoch,mean_size) or results.csv")
    c.add_argument("historical", help="7-column historical CSV")
    c.add_argument("--out", required=True)
    c.add_argument("--pond", help="restrict to one pond id")
    c.add_argument("--pond-col", type=int, default=0)
    c.add_argument("--week-col", type=int, default=1)
    c.add_argument("--weight-col", type=int, default=2)
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    if args.command == "compare":
        for name in ("pond_col", "week_col", "weight_col"):
            if not 0 <= getattr(args, name) < 7:
                print(f"aquasim: --{name.replace('_', '-')} must be in 0..6", file=sys.stderr)
                return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ConfigError) as exc:
        print(f"aquasim: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - any simulation failure maps to 1
        print(f"aquasim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
