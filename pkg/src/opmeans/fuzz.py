"""Seeded suite runner and report emission.

Trial ``i`` of law ``L`` draws its instance from the stream seeded with
``derive_seed(master_seed, i, fnv1a64(L))``, so every result depends only on
(master seed, trial, law) and never on scheduling or thread count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import errors
from ._backend import thread_count
from .laws.registry import DEFAULT_NU_GRID, Context, get_law, select
from .laws.report import canonical_json, encode_value, fnv1a64
from .linalg import MAX_DIM
from .rng import MASK64, SplitMix64, derive_seed

DEFAULT_DIMS = (1, 2, 3, 4, 6, 8)
DEFAULT_TRIALS = 1000
DEFAULT_COND_MAX = 100.0
DEFAULT_SEED = 1
COND_LIMIT = 1e8
FORMATS = ("json", "csv")
CSV_FIELDS = ("law_id", "trials", "failures", "worst_margin")


@dataclass(frozen=True)
class FuzzConfig:
    master_seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    dims: tuple = DEFAULT_DIMS
    cond_max: float = DEFAULT_COND_MAX
    nu_grid: tuple = DEFAULT_NU_GRID
    suites: tuple = ("*",)
    tol_rel: float | None = None  # None keeps each law's own tolerance
    out_path: str | None = None
    format: str = "json"
    keep_worst: bool = False

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "dims", tuple(int(d) for d in self.dims))
        set_(self, "nu_grid", tuple(float(v) for v in self.nu_grid))
        set_(self, "suites", tuple(self.suites))
        if isinstance(self.trials, bool) or int(self.trials) != self.trials or self.trials < 1:
            raise errors.ConfigError(f"trials must be a positive integer, got {self.trials}")
        set_(self, "trials", int(self.trials))
        if not 0 <= int(self.master_seed) <= MASK64:
            raise errors.ConfigError("master_seed must fit in 64 unsigned bits")
        set_(self, "master_seed", int(self.master_seed))
        if not self.dims or any(not 1 <= d <= MAX_DIM for d in self.dims):
            raise errors.ConfigError(f"dims must be non-empty and within [1, {MAX_DIM}]")
        if not 1.0 <= float(self.cond_max) <= COND_LIMIT:
            raise errors.ConfigError(f"cond_max must lie in [1, {COND_LIMIT:g}]")
        set_(self, "cond_max", float(self.cond_max))
        if not self.nu_grid or not all(math.isfinite(v) for v in self.nu_grid):
            raise errors.ConfigError("nu_grid must be a non-empty list of finite reals")
        if not self.suites:
            raise errors.ConfigError("at least one suite glob is required")
        if self.tol_rel is not None and not float(self.tol_rel) > 0:
            raise errors.ConfigError("tol_rel must be positive")
        if self.format not in FORMATS:
            raise errors.ConfigError(f"format must be one of {FORMATS}")

    def to_dict(self):
        return {
            "master_seed": self.master_seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "cond_max": self.cond_max,
            "nu_grid": list(self.nu_grid),
            "suites": list(self.suites),
            "tol_rel": self.tol_rel,
            "out_path": self.out_path,
            "format": self.format,
            "keep_worst": self.keep_worst,
        }


@dataclass
class SuiteReport:
    config: FuzzConfig
    per_law: dict = field(default_factory=dict)
    wall_time_ms: int = 0

    @property
    def failures(self):
        return sum(entry["failures"] for entry in self.per_law.values())

    def to_dict(self):
        return {"config_echo": self.config.to_dict(), "per_law": self.per_law, "wall_time_ms": self.wall_time_ms}


def law_key(law_id: str) -> int:
    return fnv1a64(law_id.encode())


def trial_seed(master_seed, trial, law_id):
    return derive_seed(master_seed, trial, law_key(law_id))


def trial_context(config: FuzzConfig, trial: int) -> Context:
    # dims cycle fastest so every (dim, weight) pair comes up
    k = len(config.dims)
    return Context(trial // k, config.dims[trial % k], config.cond_max, config.nu_grid)


def trial_inputs(config, law_id, trial):
    spec = get_law(law_id)
    rng = SplitMix64(trial_seed(config.master_seed, trial, law_id))
    return spec.sample(rng, trial_context(config, trial))


def evaluate_trial(config, law_id, trial):
    """``(passed, margin, detail)``; package errors count as failures."""
    try:
        inputs = trial_inputs(config, law_id, trial)
        rep = get_law(law_id).run(inputs, config.tol_rel)
    except errors.OpmeansError as exc:
        return False, -math.inf, {"error": f"{type(exc).__name__}: {exc}"}
    return rep.passed, rep.margin, rep


def _run_block(config, law_id, start, stop):
    trials = failures = 0
    worst = (math.inf, -1)
    for i in range(start, stop):
        passed, margin, _ = evaluate_trial(config, law_id, i)
        trials += 1
        failures += not passed
        worst = min(worst, (margin, i))
    return law_id, trials, failures, worst


def _worst_instance(config, law_id, trial):
    passed, margin, detail = evaluate_trial(config, law_id, trial)
    out = {
        "law_id": law_id,
        "trial": trial,
        "seed": trial_seed(config.master_seed, trial, law_id),
        "inputs": encode_value(trial_inputs(config, law_id, trial)),
    }
    out.update(detail if isinstance(detail, dict) else {"report": detail.to_dict()})
    return out


def _finite_or_none(v):
    return float(v) if math.isfinite(v) else None


def run_suite(config: FuzzConfig, threads: int | None = None) -> SuiteReport:
    """Evaluate every selected law on ``config.trials`` seeded instances."""
    t0 = time.perf_counter()
    law_ids = select(config.suites)
    threads = threads or thread_count()
    block = max(1, min(64, config.trials // max(1, threads)))
    jobs = [
        (law_id, start, min(start + block, config.trials))
        for law_id in law_ids
        for start in range(0, config.trials, block)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: _run_block(config, *job), jobs))
    else:
        results = [_run_block(config, *job) for job in jobs]

    acc = {law_id: [0, 0, (math.inf, -1)] for law_id in law_ids}
    for law_id, trials, failures, worst in results:
        entry = acc[law_id]
        entry[0] += trials
        entry[1] += failures
        entry[2] = min(entry[2], worst)

    per_law = {}
    for law_id, (trials, failures, (margin, trial)) in acc.items():
        entry = {"trials": trials, "failures": failures, "worst_margin": _finite_or_none(margin)}
        if failures or config.keep_worst:
            entry["worst_instance"] = _worst_instance(config, law_id, trial)
        per_law[law_id] = entry
    wall = int(round((time.perf_counter() - t0) * 1000))
    return SuiteReport(config, per_law, wall)


def render_report(report: SuiteReport, fmt="json") -> str:
    if fmt == "json":
        return canonical_json(report.to_dict()) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for law_id in sorted(report.per_law):
            e = report.per_law[law_id]
            margin = "" if e["worst_margin"] is None else repr(e["worst_margin"])
            writer.writerow((law_id, e["trials"], e["failures"], margin))
        return buf.getvalue()
    raise errors.ConfigError(f"format must be one of {FORMATS}")


def emit_report(report: SuiteReport, fmt="json", path=None):
    """Write the report to ``path`` (stdout for None or '-')."""
    text = render_report(report, fmt)
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise errors.IoError(f"cannot write report to {path}: {exc}") from exc


def parse_report(text: str, fmt="json") -> dict:
    """Inverse of ``render_report`` for the ``per_law`` numbers."""
    if fmt == "json":
        return json.loads(text)["per_law"]
    rows = csv.DictReader(io.StringIO(text))
    return {
        r["law_id"]: {
            "trials": int(r["trials"]),
            "failures": int(r["failures"]),
            "worst_margin": float(r["worst_margin"]) if r["worst_margin"] else None,
        }
        for r in rows
    }
