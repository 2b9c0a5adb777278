"""Monte Carlo fluctuation experiments and their goodness-of-fit readouts.

A run fixes a model, a target mode r, a size n, and a replication count R.
Each replication draws latents (and optionally edges), eigensolves the
resulting matrix, matches the target eigenvalue, and records

* ``statistic_nondeg`` = sqrt(n) (lambda_r(K_n)/(n-1) - lambda_r),
* ``statistic_deg``    = lambda_r(K_n) - (n-1) lambda_r - c_r,

plus the adjacency analogues and the transfer gap
``sqrt(n) (lambda_r(A_n) - lambda_r(K_n)) / (n-1)`` when both matrices are
requested. Replications are pure functions of (config, replication index):
results do not depend on thread count or execution order. Ambiguous matches
are discarded with a counted reason; a run discarding more than 20% raises.

Kolmogorov-Smirnov p-values use the asymptotic Kolmogorov distribution with
Stephens' finite-sample factor (sqrt(m) + 0.12 + 0.11/sqrt(m)), with the
effective m = |a||b|/(|a|+|b|) in the two-sample case.
"""

import concurrent.futures
import csv
import dataclasses
import hashlib
import json
import os
import time
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.stats
from threadpoolctl import threadpool_limits

from . import __version__
from .errors import (
    ConfigError,
    ExperimentQualityError,
    GraphonLabError,
    NumericError,
    ParameterError,
)
from .eigensolve import EigenDecomposition, match_target, symmetric_eigen
from .limit_laws import (
    GaussianLaw,
    chi_square_law,
    gaussian_law,
    law_cdf,
    law_variance,
    sample_law,
)
from .models import GraphonModel
from .sampling import (
    MAX_N,
    STREAM_EDGES,
    STREAM_LATENTS,
    STREAM_LAW,
    adjacency_matrix,
    draw_latents,
    kernel_matrix,
    stream,
)
from .spectrum import (
    DEGENERATE,
    analytic_spectrum,
    nystrom_spectrum,
    regime_constants,
)
from . import diagnostics as diag

__all__ = [
    "ExperimentConfig",
    "FluctuationRecord",
    "ExperimentReport",
    "ComparisonReport",
    "KsResult",
    "run_replication",
    "run_experiment",
    "adjacency_comparison",
    "ks_one_sample",
    "ks_two_sample",
    "write_records_csv",
]

_SOURCES = ("kernel", "adjacency", "both")
_LAW_SAMPLE_COUNT = 10**5
_DISCARD_LIMIT = 0.2


# ---------------------------------------------------------------------------
# configuration


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce a run.

    ``threads``, ``out_dir``, and ``dump_draw`` are execution details: they
    never change the recorded numbers and are excluded from the config hash.
    """

    model: GraphonModel
    r: int
    n: int
    replications: int
    seed: int
    matrix_source: str = "kernel"
    spectrum_method: str = "analytic"
    nystrom_grid: int = 512
    nystrom_modes: int = 16
    truncation: Optional[int] = None
    ladder: tuple = (250, 500, 1000)
    full_diagnostics: bool = False
    threads: int = 1
    out_dir: Optional[str] = None
    dump_draw: bool = False

    def validate(self):
        """Raise :class:`ConfigError` listing every violated constraint."""
        problems = []
        if self.r < 1:
            problems.append("r: target mode must be >= 1")
        if self.n < 50:
            problems.append("n: experiments need n >= 50")
        if self.n > MAX_N:
            problems.append(f"n: exceeds the dense-matrix cap {MAX_N}")
        if self.replications < 10:
            problems.append("replications: experiments need at least 10")
        if not 0 <= int(self.seed) < 2**64:
            problems.append("seed: must be a 64-bit unsigned integer")
        if self.matrix_source not in _SOURCES:
            problems.append(f"matrix_source: must be one of {_SOURCES}")
        if self.spectrum_method not in ("analytic", "nystrom"):
            problems.append("spectrum_method: must be 'analytic' or 'nystrom'")
        if self.spectrum_method == "nystrom":
            if self.nystrom_grid < 64:
                problems.append("nystrom_grid: must be at least 64")
            if not 1 <= self.nystrom_modes <= self.nystrom_grid:
                problems.append("nystrom_modes: must lie in 1..nystrom_grid")
        if self.truncation is not None and self.truncation < max(self.r, 1):
            problems.append("truncation: must retain at least the target mode")
        if self.threads < 0:
            problems.append("threads: must be >= 0 (0 = auto)")
        ladder = tuple(self.ladder)
        if len(ladder) < 2 or any(b <= a for a, b in zip(ladder, ladder[1:])):
            problems.append("ladder: needs at least two strictly increasing sizes")
        elif any(not 50 <= v <= MAX_N for v in ladder):
            problems.append(f"ladder: sizes must lie in 50..{MAX_N}")
        if self.matrix_source in ("adjacency", "both") and self.model.sup_norm_bound() > 1.0:
            problems.append("matrix_source: edge sampling requires sup norm <= 1")
        if problems:
            raise ConfigError(problems)

    def canonical_dict(self):
        """Result-determining fields only, with the model inlined."""
        return {
            "model": self.model.name,
            **self.model.params(),
            "r": self.r,
            "n": self.n,
            "replications": self.replications,
            "seed": int(self.seed),
            "matrix_source": self.matrix_source,
            "spectrum_method": self.spectrum_method,
            "nystrom_grid": self.nystrom_grid,
            "nystrom_modes": self.nystrom_modes,
            "truncation": self.truncation,
            "ladder": list(self.ladder),
            "full_diagnostics": self.full_diagnostics,
        }

    def config_hash(self):
        blob = json.dumps(self.canonical_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def spectrum(self):
        if self.spectrum_method == "analytic":
            return analytic_spectrum(self.model)
        return nystrom_spectrum(self.model, self.nystrom_grid, self.nystrom_modes)


# ---------------------------------------------------------------------------
# records


@dataclass
class FluctuationRecord:
    """One replication's matched eigenvalues and fluctuation statistics.

    Ambiguous or failed replications carry no statistics; ``discard_reason``
    says why. ``diagnostics`` is a flat dict of optional per-draw extras.
    """

    replication: int
    n: int
    ambiguous: bool = False
    discard_reason: Optional[str] = None
    matched_kernel: Optional[float] = None
    matched_adjacency: Optional[float] = None
    statistic_nondeg: Optional[float] = None
    statistic_deg: Optional[float] = None
    statistic_adj_nondeg: Optional[float] = None
    statistic_adj_deg: Optional[float] = None
    statistic_adj_diff: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def clean(self):
        return self.discard_reason is None


@dataclass
class KsResult:
    """A Kolmogorov-Smirnov readout (statistic, p-value, effective size)."""

    kind: str
    statistic: float
    p_value: float
    effective_size: float


# ---------------------------------------------------------------------------
# Kolmogorov-Smirnov machinery


def _kolmogorov_sf(lam):
    """Survival function 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lam^2)."""
    if lam <= 0.0:
        return 1.0
    total = 0.0
    for j in range(1, 101):
        term = 2.0 * (-1.0) ** (j - 1) * np.exp(-2.0 * j * j * lam * lam)
        total += term
        if abs(term) < 1e-16:
            break
    return float(min(max(total, 0.0), 1.0))


def _stephens_p(d, m_eff):
    root = np.sqrt(m_eff)
    return _kolmogorov_sf((root + 0.12 + 0.11 / root) * d)


def ks_one_sample(samples, cdf):
    """KS test of iid samples against an exact CDF callable.

    Needs at least 10 samples. Returns the sup distance between the
    empirical and target CDFs and the asymptotic p-value.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    m = len(x)
    if m < 10:
        raise ParameterError("one-sample KS needs at least 10 samples")
    F = np.asarray(cdf(x), dtype=float)
    if np.any(F < -1e-12) or np.any(F > 1.0 + 1e-12) or np.any(np.diff(F) < -1e-12):
        raise ParameterError("cdf callable did not return a valid distribution")
    hi = np.arange(1, m + 1) / m
    lo = np.arange(0, m) / m
    d = float(max(np.max(hi - F), np.max(F - lo)))
    return KsResult("one_sample", d, _stephens_p(d, m), float(m))


def ks_two_sample(a, b):
    """KS test of two independent iid samples against each other."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if len(a) < 10 or len(b) < 10:
        raise ParameterError("two-sample KS needs at least 10 samples per side")
    pooled = np.concatenate([a, b])
    pooled.sort(kind="mergesort")
    fa = np.searchsorted(a, pooled, side="right") / len(a)
    fb = np.searchsorted(b, pooled, side="right") / len(b)
    d = float(np.max(np.abs(fa - fb)))
    m_eff = len(a) * len(b) / (len(a) + len(b))
    return KsResult("two_sample", d, _stephens_p(d, m_eff), float(m_eff))


# ---------------------------------------------------------------------------
# replications


def _matched_or_reason(values, constants, n, label):
    matched = match_target(EigenDecomposition(values=values), constants, n)
    if not matched.unambiguous:
        return None, f"ambiguous-{label}"
    return matched, None


def run_replication(config, spec, constants, replication):
    """Compute one :class:`FluctuationRecord` (pure in config+replication)."""
    n = config.n
    rec = FluctuationRecord(replication=replication, n=n)
    lam_r = constants.eigenvalue
    want_kernel = config.matrix_source in ("kernel", "both")
    want_adj = config.matrix_source in ("adjacency", "both")
    try:
        latents = draw_latents(n, stream(config.seed, replication, STREAM_LATENTS))
        K = kernel_matrix(config.model, latents)
        matched_k = matched_a = None
        if want_kernel:
            values = symmetric_eigen(K).values
            matched_k, reason = _matched_or_reason(values, constants, n, "kernel")
            if reason:
                rec.ambiguous, rec.discard_reason = True, reason
                return rec
        if want_adj:
            A = adjacency_matrix(
                config.model, latents, stream(config.seed, replication, STREAM_EDGES)
            )
            values = symmetric_eigen(A).values
            matched_a, reason = _matched_or_reason(values, constants, n, "adjacency")
            if reason:
                rec.ambiguous, rec.discard_reason = True, reason
                return rec
        root_n = float(np.sqrt(n))
        if matched_k is not None:
            rec.matched_kernel = matched_k.value
            rec.statistic_nondeg = root_n * (matched_k.value / (n - 1) - lam_r)
            rec.statistic_deg = matched_k.value - (n - 1) * lam_r - constants.c_r
        if matched_a is not None:
            rec.matched_adjacency = matched_a.value
            rec.statistic_adj_nondeg = root_n * (matched_a.value / (n - 1) - lam_r)
            rec.statistic_adj_deg = matched_a.value - (n - 1) * lam_r - constants.c_r
        if matched_k is not None and matched_a is not None:
            rec.statistic_adj_diff = (
                root_n * (matched_a.value - matched_k.value) / (n - 1)
            )
        _attach_diagnostics(config, spec, constants, rec, latents, K, matched_k)
    except NumericError as exc:
        rec.discard_reason = f"numeric: {exc}"
    return rec


def _attach_diagnostics(config, spec, constants, rec, latents, K, matched_k):
    """Fill the optional diagnostics dict on a clean record.

    Degenerate-regime extras (cross-projections, resolvent correction) run
    for every degenerate-regime replication and under --full-diagnostics;
    the cheaper generic extras only under --full-diagnostics.
    """
    degenerate = constants.regime == DEGENERATE
    want_deg = degenerate or config.full_diagnostics
    want_all = config.full_diagnostics
    if not (want_deg or want_all):
        return
    d = rec.diagnostics
    phi = spec.phi(constants.r, latents)
    if want_all:
        parts = diag.hoeffding_decompose(
            config.model, spec, constants.r, latents, kernel=K
        )
        d["v_stat"] = parts.centered_sq_mean
        d["rayleigh"] = diag.rayleigh_quotient(K, phi)
        n = rec.n
        half = constants.gap / 2.0
        try:
            kt = diag.kato_temple_interval(
                K,
                phi / np.linalg.norm(phi),
                (n - 1) * (constants.eigenvalue - half),
                (n - 1) * (constants.eigenvalue + half),
            )
            d["kt_lower"], d["kt_upper"] = kt.lower, kt.upper
        except GraphonLabError:
            d["kt_lower"] = d["kt_upper"] = None
    if want_deg and len(spec.eigenvalues) > 1:
        proj = diag.cross_projections(spec, constants.r, latents)
        d["cross_projections"] = proj.values.tolist()
    if want_deg:
        d["resolvent"] = diag.resolvent_correction(
            K, phi / np.linalg.norm(phi), constants.eigenvalue, rec.n
        )


# ---------------------------------------------------------------------------
# experiments


def _moments(x):
    x = np.asarray(x, dtype=float)
    with warnings.catch_warnings():
        # near-constant samples (e.g. a constant kernel) trip scipy's
        # precision-loss warning; record a plain 0 instead
        warnings.simplefilter("ignore", RuntimeWarning)
        skew = float(scipy.stats.skew(x)) if len(x) > 2 else 0.0
        kurt = float(scipy.stats.kurtosis(x)) if len(x) > 3 else 0.0
    return {
        "count": int(len(x)),
        "mean": float(np.mean(x)),
        "variance": float(np.var(x, ddof=1)) if len(x) > 1 else 0.0,
        "skewness": skew if np.isfinite(skew) else 0.0,
        "kurtosis": kurt if np.isfinite(kurt) else 0.0,
    }


def _law_description(law):
    if isinstance(law, GaussianLaw):
        return {"kind": "gaussian", "variance": law.variance}
    return {
        "kind": "weighted_chi_square",
        "coefficients": np.asarray(law.coefficients).tolist(),
        "modes": np.asarray(law.modes).tolist(),
        "centering": law.centering,
        "truncation": law.truncation,
        "tail_sq_mass": law.tail_sq_mass,
        "variance": law_variance(law),
    }


@dataclass
class ExperimentReport:
    """Aggregated outcome of one run."""

    config: dict
    config_hash: str
    provenance: str
    eigenvalues: list
    constants: dict
    law: dict
    records: list
    clean_count: int
    discarded_ambiguous: int
    discarded_numeric: int
    moments: dict
    ks: dict
    status: str
    wall_seconds: float

    def summary_dict(self):
        out = {
            "config": self.config,
            "config_hash": self.config_hash,
            "provenance": self.provenance,
            "eigenvalues": self.eigenvalues,
            "constants": self.constants,
            "law": self.law,
            "replications": len(self.records),
            "clean": self.clean_count,
            "discarded_ambiguous": self.discarded_ambiguous,
            "discarded_numeric": self.discarded_numeric,
            "moments": self.moments,
            "ks": self.ks,
            "status": self.status,
            "wall_seconds": self.wall_seconds,
        }
        return out


def _run_records(config, spec, constants):
    """All replications, sorted by index; thread count never changes values."""
    reps = range(config.replications)
    workers = config.threads if config.threads > 0 else (os.cpu_count() or 1)
    # BLAS pinned to one thread inside workers: replication-level parallelism
    # only, so --threads k is a speed knob, not a results knob
    with threadpool_limits(limits=1):
        if workers == 1:
            records = [run_replication(config, spec, constants, i) for i in reps]
        else:
            with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
                records = list(
                    pool.map(lambda i: run_replication(config, spec, constants, i), reps)
                )
    records.sort(key=lambda rec: rec.replication)
    return records


def run_experiment(config):
    """Run every replication, aggregate, test fit, and write outputs.

    Returns an :class:`ExperimentReport`; raises
    :class:`ExperimentQualityError` (after writing any requested outputs)
    when more than 20% of replications were discarded.
    """
    t0 = time.perf_counter()
    config.validate()
    out_dir = _prepare_out_dir(config)
    spec = config.spectrum()
    constants = regime_constants(spec, config.r, config.truncation)
    degenerate = constants.regime == DEGENERATE
    law = chi_square_law(spec, constants) if degenerate else gaussian_law(constants)
    records = _run_records(config, spec, constants)
    clean = [rec for rec in records if rec.clean]
    n_ambiguous = sum(1 for rec in records if rec.discard_reason and rec.ambiguous)
    n_numeric = sum(1 for rec in records if rec.discard_reason and not rec.ambiguous)

    moments = {}
    for name in (
        "statistic_nondeg",
        "statistic_deg",
        "statistic_adj_nondeg",
        "statistic_adj_deg",
        "statistic_adj_diff",
    ):
        vals = [getattr(rec, name) for rec in clean if getattr(rec, name) is not None]
        if vals:
            moments[name] = _moments(vals)

    ks = {}
    kernel_side = config.matrix_source in ("kernel", "both")
    stat_name = "statistic_nondeg" if not degenerate else "statistic_deg"
    if not kernel_side:
        stat_name = "statistic_adj_nondeg" if not degenerate else "statistic_adj_deg"
    fit_values = [getattr(rec, stat_name) for rec in clean if getattr(rec, stat_name) is not None]
    if len(fit_values) >= 10:
        if degenerate:
            law_rng = stream(config.seed, 0, STREAM_LAW)
            reference = sample_law(law, _LAW_SAMPLE_COUNT, law_rng)
            res = ks_two_sample(fit_values, reference)
        else:
            res = ks_one_sample(fit_values, lambda x: law_cdf(law, x))
        ks[stat_name] = {
            "kind": res.kind,
            "statistic": res.statistic,
            "p_value": res.p_value,
            "effective_size": res.effective_size,
        }

    frac_discarded = 1.0 - len(clean) / len(records)
    status = "ok" if frac_discarded <= _DISCARD_LIMIT else "quality-error"
    report = ExperimentReport(
        config=config.canonical_dict(),
        config_hash=config.config_hash(),
        provenance=spec.provenance,
        eigenvalues=spec.eigenvalues.tolist(),
        constants={
            "r": constants.r,
            "eigenvalue": constants.eigenvalue,
            "gap": constants.gap,
            "sigma_sq": constants.sigma_sq,
            "regime": constants.regime,
            "c_r": constants.c_r,
            "tail_bound": constants.tail_bound,
            "truncation": constants.truncation,
        },
        law=_law_description(law),
        records=records,
        clean_count=len(clean),
        discarded_ambiguous=n_ambiguous,
        discarded_numeric=n_numeric,
        moments=moments,
        ks=ks,
        status=status,
        wall_seconds=time.perf_counter() - t0,
    )
    if out_dir is not None:
        _write_outputs(config, report, out_dir)
    if status != "ok":
        raise ExperimentQualityError(
            f"{len(records) - len(clean)} of {len(records)} replications discarded "
            f"(> {_DISCARD_LIMIT:.0%})"
        )
    return report


@dataclass
class ComparisonReport:
    """Kernel-vs-adjacency transfer along a ladder of sizes."""

    config: dict
    ladder: list
    medians: list
    p90s: list
    decreasing: bool
    ks_adjacency: Optional[dict]
    reports: list

    def summary_dict(self):
        return {
            "config": self.config,
            "ladder": self.ladder,
            "median_abs_adj_diff": self.medians,
            "p90_abs_adj_diff": self.p90s,
            "medians_strictly_decreasing": self.decreasing,
            "ks_adjacency_at_largest": self.ks_adjacency,
            "per_size": [r.summary_dict() for r in self.reports],
        }


def adjacency_comparison(config):
    """Run the ladder of sizes with both matrices and summarize the transfer.

    For each n in ``config.ladder`` the full experiment runs with
    ``matrix_source='both'``; the report tracks the median and 90th
    percentile of |sqrt(n) (lambda_r(A) - lambda_r(K)) / (n-1)| per size,
    whether the medians strictly decrease, and the adjacency-statistic KS
    at the largest size.
    """
    config.validate()
    if config.model.sup_norm_bound() > 1.0:
        raise ConfigError(["model: edge sampling requires sup norm <= 1"])
    reports = []
    medians = []
    p90s = []
    for size in config.ladder:
        sub = dataclasses.replace(
            config, n=size, matrix_source="both", out_dir=None, dump_draw=False
        )
        rep = run_experiment(sub)
        gaps = [
            abs(rec.statistic_adj_diff)
            for rec in rep.records
            if rec.clean and rec.statistic_adj_diff is not None
        ]
        if not gaps:
            raise ExperimentQualityError(f"no clean replications at n={size}")
        medians.append(float(np.median(gaps)))
        p90s.append(float(np.quantile(gaps, 0.9)))
        reports.append(rep)
    decreasing = all(b < a for a, b in zip(medians, medians[1:]))
    ks_adj = None
    last = reports[-1]
    degenerate = last.constants["regime"] == DEGENERATE
    name = "statistic_adj_deg" if degenerate else "statistic_adj_nondeg"
    if name in last.ks:
        ks_adj = last.ks[name]
    else:
        vals = [
            getattr(rec, name)
            for rec in last.records
            if rec.clean and getattr(rec, name) is not None
        ]
        if len(vals) >= 10:
            law = _law_from_config(config)
            if degenerate:
                reference = sample_law(
                    law, _LAW_SAMPLE_COUNT, stream(config.seed, 0, STREAM_LAW)
                )
                res = ks_two_sample(vals, reference)
            else:
                res = ks_one_sample(vals, lambda x: law_cdf(law, x))
            ks_adj = {
                "kind": res.kind,
                "statistic": res.statistic,
                "p_value": res.p_value,
                "effective_size": res.effective_size,
            }
    report = ComparisonReport(
        config=config.canonical_dict(),
        ladder=list(config.ladder),
        medians=medians,
        p90s=p90s,
        decreasing=decreasing,
        ks_adjacency=ks_adj,
        reports=reports,
    )
    out_dir = _prepare_out_dir(config)
    if out_dir is not None:
        _write_comparison_outputs(config, report, out_dir)
    return report


def _law_from_config(config):
    spec = config.spectrum()
    constants = regime_constants(spec, config.r, config.truncation)
    if constants.regime == DEGENERATE:
        return chi_square_law(spec, constants)
    return gaussian_law(constants)


# ---------------------------------------------------------------------------
# outputs

_BASE_COLUMNS = [
    "replication",
    "n",
    "matched_kernel",
    "matched_adjacency",
    "statistic_nondeg",
    "statistic_deg",
    "statistic_adj_nondeg",
    "statistic_adj_deg",
    "statistic_adj_diff",
    "ambiguous",
    "discard_reason",
]
_DIAG_COLUMNS = ["v_stat", "rayleigh", "kt_lower", "kt_upper", "resolvent", "cross_projections"]


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        # shortest round-trip repr of the plain Python float, so files are
        # byte-stable across runs and numpy versions
        return repr(float(value))
    if isinstance(value, list):
        return ";".join(repr(float(v)) for v in value)
    return str(value)


def write_records_csv(records, path):
    """Per-replication CSV with a deterministic header and float formatting.

    Floats are written with shortest round-trip ``repr``; two runs of the
    same config and seed produce byte-identical files.
    """
    with_diag = any(rec.diagnostics for rec in records)
    columns = _BASE_COLUMNS + (_DIAG_COLUMNS if with_diag else [])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            row = [
                rec.replication,
                rec.n,
                _fmt(rec.matched_kernel),
                _fmt(rec.matched_adjacency),
                _fmt(rec.statistic_nondeg),
                _fmt(rec.statistic_deg),
                _fmt(rec.statistic_adj_nondeg),
                _fmt(rec.statistic_adj_deg),
                _fmt(rec.statistic_adj_diff),
                _fmt(rec.ambiguous),
                rec.discard_reason or "",
            ]
            if with_diag:
                row.extend(_fmt(rec.diagnostics.get(c)) for c in _DIAG_COLUMNS)
            writer.writerow(row)


def _prepare_out_dir(config):
    if config.out_dir is None:
        return None
    out_dir = str(config.out_dir)
    try:
        os.makedirs(out_dir, exist_ok=True)
        probe = os.path.join(out_dir, ".write-probe")
        with open(probe, "w") as fh:
            fh.write("ok")
        os.remove(probe)
    except OSError as exc:
        raise ConfigError([f"out_dir: not writable ({exc})"]) from exc
    return out_dir


def _write_json(payload, path):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_manifest(config, out_dir, filenames):
    entries = []
    for name in filenames:
        full = os.path.join(out_dir, name)
        entries.append({"path": name, "bytes": os.path.getsize(full)})
    manifest = {
        "tool": "graphonlab",
        "version": __version__,
        "config_hash": config.config_hash(),
        "created_utc": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "outputs": entries,
    }
    _write_json(manifest, os.path.join(out_dir, "manifest.json"))


def _dump_draw_files(config, out_dir):
    from .sampling import draw as draw_fn

    want_adj = config.matrix_source in ("adjacency", "both")
    d = draw_fn(
        config.model, config.n, config.seed, replication=0,
        with_kernel=True, with_adjacency=want_adj,
    )
    names = []

    def _write_matrix(name, mat):
        path = os.path.join(out_dir, name)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            for row in np.atleast_2d(mat):
                writer.writerow([repr(float(v)) for v in row])
        names.append(name)

    _write_matrix("draw_latents.csv", d.latents)
    _write_matrix("draw_kernel.csv", d.kernel)
    if want_adj:
        _write_matrix("draw_adjacency.csv", d.adjacency)
    return names


def _write_outputs(config, report, out_dir):
    write_records_csv(report.records, os.path.join(out_dir, "records.csv"))
    _write_json(report.summary_dict(), os.path.join(out_dir, "summary.json"))
    names = ["records.csv", "summary.json"]
    if config.dump_draw:
        names.extend(_dump_draw_files(config, out_dir))
    _write_manifest(config, out_dir, names)


def _write_comparison_outputs(config, report, out_dir):
    names = []
    for size, rep in zip(report.ladder, report.reports):
        name = f"records_n{size}.csv"
        write_records_csv(rep.records, os.path.join(out_dir, name))
        names.append(name)
    _write_json(report.summary_dict(), os.path.join(out_dir, "comparison.json"))
    names.append("comparison.json")
    _write_manifest(config, out_dir, names)
