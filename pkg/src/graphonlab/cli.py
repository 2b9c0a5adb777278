"""Command-line front end.

Subcommands (each takes a JSON config file; see docs/config-schema.md):

* ``spectrum``  -- population eigenvalues and regime constants
* ``simulate``  -- Monte Carlo fluctuation run (CSV + JSON + manifest)
* ``limit``     -- the applicable limit law with a quantile table
* ``compare``   -- kernel vs adjacency transfer along a ladder of sizes
* ``validate``  -- config and model validation report

Exit codes: 0 success, 1 validation/config error, 2 numeric or
experiment-quality error.
"""

import argparse
import json
import os
import sys

import numpy as np

from .errors import (
    ConfigError,
    ExperimentQualityError,
    GraphonLabError,
    NumericError,
)
from .experiment import ExperimentConfig, adjacency_comparison, run_experiment
from .limit_laws import chi_square_law, gaussian_law, law_quantiles, law_variance
from .models import BlockModel, BrownianSqrt, GridKernel, PowerKernel
from .spectrum import DEGENERATE, regime_constants

__all__ = ["parse_config", "dispatch", "main"]

_MODEL_KEYS = {
    "block_model": {"proportions", "connectivity"},
    "power_kernel": {"alpha"},
    "brownian_sqrt": set(),
    "grid_kernel": {"grid_values"},
}
_COMMON_KEYS = {
    "model",
    "r",
    "n",
    "replications",
    "seed",
    "matrix_source",
    "spectrum",
    "nystrom_grid",
    "nystrom_modes",
    "truncation",
    "ladder",
    "out_dir",
}
_ANALYTIC_MODELS = {"block_model", "power_kernel"}
_QUANTILE_PERCENTS = [1] + list(range(5, 100, 5)) + [99]


def _expect_int(problems, raw, key, default):
    value = raw.get(key, default)
    if value is None and default is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        problems.append(f"{key}: expected an integer, got {value!r}")
        return default
    return value


def _build_model(problems, raw, model_name):
    try:
        if model_name == "power_kernel":
            if "alpha" not in raw:
                problems.append("alpha: required for power_kernel")
                return None
            return PowerKernel(raw["alpha"])
        if model_name == "block_model":
            missing = [k for k in ("proportions", "connectivity") if k not in raw]
            if missing:
                problems.extend(f"{k}: required for block_model" for k in missing)
                return None
            return BlockModel(raw["proportions"], raw["connectivity"])
        if model_name == "grid_kernel":
            if "grid_values" not in raw:
                problems.append("grid_values: required for grid_kernel")
                return None
            return GridKernel(raw["grid_values"])
        return BrownianSqrt()
    except GraphonLabError as exc:
        key = next(iter(_MODEL_KEYS[model_name]), "model")
        problems.append(f"{key}: {exc}")
        return None


def parse_config(path):
    """Load and validate a JSON run config into an :class:`ExperimentConfig`.

    Unknown keys, keys belonging to a different model, bad types, and bad
    ranges are all reported together in one :class:`ConfigError`, each
    message prefixed with the offending field path.
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError([f"config: cannot read {path} ({exc})"]) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config: invalid JSON ({exc})"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["config: top level must be a JSON object"])

    problems = []
    model_name = raw.get("model")
    if model_name is None:
        problems.append("model: required")
    elif model_name not in _MODEL_KEYS:
        problems.append(
            f"model: unknown model {model_name!r}; choose from {sorted(_MODEL_KEYS)}"
        )
    allowed = _COMMON_KEYS | _MODEL_KEYS.get(model_name, set())
    for key in sorted(raw):
        if key in allowed:
            continue
        owner = next((m for m, ks in _MODEL_KEYS.items() if key in ks), None)
        if owner:
            problems.append(f"{key}: only valid for model {owner!r}")
        else:
            problems.append(f"{key}: unknown key")
    if problems:
        raise ConfigError(problems)

    model = _build_model(problems, raw, model_name)
    r = _expect_int(problems, raw, "r", 1)
    n = _expect_int(problems, raw, "n", 500)
    replications = _expect_int(problems, raw, "replications", 200)
    seed = _expect_int(problems, raw, "seed", 1)
    truncation = _expect_int(problems, raw, "truncation", None)
    nystrom_grid = _expect_int(problems, raw, "nystrom_grid", 512)
    nystrom_modes = _expect_int(problems, raw, "nystrom_modes", 16)

    matrix_source = raw.get("matrix_source", "kernel")
    spectrum_method = raw.get(
        "spectrum", "analytic" if model_name in _ANALYTIC_MODELS else "nystrom"
    )
    if spectrum_method == "analytic" and model_name not in _ANALYTIC_MODELS:
        problems.append(f"spectrum: no analytic spectrum for model {model_name!r}")
    ladder = raw.get("ladder", [250, 500, 1000])
    if not isinstance(ladder, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in ladder
    ):
        problems.append("ladder: expected a list of integers")
        ladder = [250, 500, 1000]
    out_dir = raw.get("out_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        problems.append("out_dir: expected a string path")
        out_dir = None
    if problems:
        raise ConfigError(problems)

    config = ExperimentConfig(
        model=model,
        r=r,
        n=n,
        replications=replications,
        seed=seed,
        matrix_source=matrix_source,
        spectrum_method=spectrum_method,
        nystrom_grid=nystrom_grid,
        nystrom_modes=nystrom_modes,
        truncation=truncation,
        ladder=tuple(ladder),
        out_dir=out_dir,
    )
    config.validate()
    return config


# ---------------------------------------------------------------------------
# subcommands


def _emit(payload, out_dir, filename):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out_dir is None:
        print(text)
    else:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, filename)
        with open(path, "w") as fh:
            fh.write(text + "\n")
        print(path)


def _constants_dict(constants):
    return {
        "r": constants.r,
        "eigenvalue": constants.eigenvalue,
        "gap": constants.gap,
        "sigma_sq": constants.sigma_sq,
        "regime": constants.regime,
        "c_r": constants.c_r,
        "tail_bound": constants.tail_bound,
        "truncation": constants.truncation,
    }


def _cmd_spectrum(config, args):
    spec = config.spectrum()
    constants = regime_constants(spec, config.r, config.truncation)
    _emit(
        {
            "model": config.model.name,
            "provenance": spec.provenance,
            "rank_exact": spec.rank_exact,
            "eigenvalues": spec.eigenvalues.tolist(),
            "tail_sq": spec.tail_sq,
            "constants": _constants_dict(constants),
        },
        args.out,
        "spectrum.json",
    )
    return 0


def _cmd_limit(config, args):
    spec = config.spectrum()
    constants = regime_constants(spec, config.r, config.truncation)
    if constants.regime == DEGENERATE:
        law = chi_square_law(spec, constants)
        desc = {
            "kind": "weighted_chi_square",
            "coefficients": np.asarray(law.coefficients).tolist(),
            "modes": np.asarray(law.modes).tolist(),
            "centering": law.centering,
            "truncation": law.truncation,
            "tail_sq_mass": law.tail_sq_mass,
            "cdf_accuracy": law.cdf_accuracy,
        }
    else:
        law = gaussian_law(constants)
        desc = {"kind": "gaussian", "variance": law.variance}
    probs = [p / 100.0 for p in _QUANTILE_PERCENTS]
    quants = law_quantiles(law, probs)
    desc["variance"] = law_variance(law)
    desc["quantiles"] = {
        f"{p}%": float(q) for p, q in zip(_QUANTILE_PERCENTS, quants)
    }
    _emit({"constants": _constants_dict(constants), "law": desc}, args.out, "limit.json")
    return 0


def _apply_run_flags(config, args):
    if args.out is not None:
        config.out_dir = args.out
    if getattr(args, "threads", None) is not None:
        config.threads = args.threads
    if getattr(args, "full_diagnostics", False):
        config.full_diagnostics = True
    if getattr(args, "dump_draw", False):
        config.dump_draw = True


def _cmd_simulate(config, args):
    _apply_run_flags(config, args)
    report = run_experiment(config)
    if config.out_dir is None:
        print(json.dumps(report.summary_dict(), indent=2, sort_keys=True))
    else:
        print(os.path.join(config.out_dir, "summary.json"))
    return 0


def _cmd_compare(config, args):
    _apply_run_flags(config, args)
    report = adjacency_comparison(config)
    if config.out_dir is None:
        print(json.dumps(report.summary_dict(), indent=2, sort_keys=True))
    else:
        print(os.path.join(config.out_dir, "comparison.json"))
    return 0


def _cmd_validate(config, args):
    model_report = config.model.validate()
    payload = {
        "config": "ok",
        "model": {
            "passed": model_report.passed,
            "violations": model_report.violations,
        },
    }
    _emit(payload, args.out, "validate.json")
    return 0 if model_report.passed else 1


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "simulate": _cmd_simulate,
    "limit": _cmd_limit,
    "compare": _cmd_compare,
    "validate": _cmd_validate,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError([f"usage: {message}"])


def _build_parser():
    parser = _Parser(prog="graphonlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")
    for name, help_text in (
        ("spectrum", "population eigenvalues and regime constants"),
        ("simulate", "run the Monte Carlo fluctuation experiment"),
        ("limit", "describe the applicable limit law"),
        ("compare", "kernel vs adjacency transfer ladder"),
        ("validate", "validate a config file and its model"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="path to a JSON run config")
        p.add_argument("--out", default=None, help="output directory override")
        if name in ("simulate", "compare"):
            p.add_argument(
                "--threads", type=int, default=None,
                help="replication worker threads (0 = auto)",
            )
            p.add_argument(
                "--full-diagnostics", action="store_true", dest="full_diagnostics",
                help="record every per-draw diagnostic",
            )
        if name == "simulate":
            p.add_argument(
                "--dump-draw", action="store_true", dest="dump_draw",
                help="also write replication 0's latents and matrices",
            )
    return parser


def dispatch(argv):
    """Parse arguments, run the subcommand, and return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 1
        config = parse_config(args.config)
        return _COMMANDS[args.command](config, args)
    except (NumericError, ExperimentQualityError) as exc:
        print(f"graphonlab: error: {exc}", file=sys.stderr)
        return 2
    except GraphonLabError as exc:
        if isinstance(exc, ConfigError):
            for msg in exc.messages:
                print(f"graphonlab: config error: {msg}", file=sys.stderr)
        else:
            print(f"graphonlab: error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
