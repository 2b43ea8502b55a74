"""Key/value config parsing, the experiment runner, and CSV emission."""

import argparse
import csv
import os
import sys
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .control import FeedbackLaw
from .evolve import InitialCondition, RunResult, SolverConfig, Termination, run
from .grid import GridSpec
from .model import PhysicsParams

SERIES_HEADER = ["tau", "norm_sq", "mu", "l2_error", "energy"]
PROFILE_HEADER = ["x", "re", "im", "abs", "ref_abs"]
SUMMARY_HEADER = ["alpha", "final_norm_sq", "final_abs_mu", "final_l2_error", "termination", "steps"]

DEFAULT_ALPHAS = [0.05, 0.1, 0.25, 0.5, 1.0]

KNOWN_KEYS = {
    "kind", "L", "N", "g", "dtau", "max_steps", "law", "alpha", "alphas",
    "target_norm_sq", "initial", "renormalize", "record_every",
    "convergence_tol", "out_dir",
}

KINDS = {"single", "baseline_compare", "alpha_sweep"}


class ConfigError(ValueError):
    """A configuration document failed validation."""


@dataclass(frozen=True)
class ExperimentSpec:
    kind: str
    base: SolverConfig
    alpha_values: list[float]
    out_dir: Path


@dataclass
class ExperimentOutcome:
    files: list[Path]
    results: dict[str, RunResult]

    @property
    def any_diverged(self) -> bool:
        return any(r.termination is Termination.DIVERGED for r in self.results.values())


def _parse_float(raw: str, key: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"key {key!r}: expected a number, got {raw!r}") from None


def _parse_int(raw: str, key: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"key {key!r}: expected an integer, got {raw!r}") from None


def _parse_bool(raw: str, key: str) -> bool:
    if raw == "true":
        return True
    if raw == "false":
        return False
    raise ConfigError(f"key {key!r}: expected true or false, got {raw!r}")


def parse_config(text: str, overrides: dict[str, str] | None = None) -> ExperimentSpec:
    """Parse a flat `key = value` document (# comments) into an ExperimentSpec."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        raw[key] = value
    for key, value in (overrides or {}).items():
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown override key {key!r}")
        raw[key] = value

    kind = raw.get("kind", "single")
    if kind not in KINDS:
        raise ConfigError(f"key 'kind': expected one of {sorted(KINDS)}, got {kind!r}")

    length = _parse_float(raw.get("L", "40"), "L")
    points = _parse_int(raw.get("N", "512"), "N")
    if points < 4:
        raise ConfigError("key 'N': grid needs at least 4 points")
    g = _parse_float(raw.get("g", "-1"), "g")
    dtau = _parse_float(raw.get("dtau", "1e-3"), "dtau")
    if dtau <= 0:
        raise ConfigError("key 'dtau': time step must be positive")
    max_steps = _parse_int(raw.get("max_steps", "20000"), "max_steps")
    if max_steps <= 0:
        raise ConfigError("key 'max_steps': must be positive")
    record_every = _parse_int(raw.get("record_every", "10"), "record_every")
    if record_every <= 0:
        raise ConfigError("key 'record_every': must be positive")
    convergence_tol = _parse_float(raw.get("convergence_tol", "1e-10"), "convergence_tol")
    if convergence_tol <= 0:
        raise ConfigError("key 'convergence_tol': must be positive")
    alpha = _parse_float(raw.get("alpha", "0.5"), "alpha")
    if alpha < 0:
        raise ConfigError("key 'alpha': feedback strength must be nonnegative")
    target_norm_sq = _parse_float(raw.get("target_norm_sq", "2"), "target_norm_sq")
    if target_norm_sq <= 0:
        raise ConfigError("key 'target_norm_sq': must be positive")

    renormalize = _parse_bool(raw.get("renormalize", "false"), "renormalize")
    if "law" in raw:
        try:
            law = FeedbackLaw(raw["law"])
        except ValueError:
            raise ConfigError(
                f"key 'law': expected one of {[l.value for l in FeedbackLaw]}, got {raw['law']!r}"
            ) from None
        if renormalize and law is not FeedbackLaw.OFF:
            raise ConfigError("renormalize=true requires law=off (projection and feedback are exclusive)")
    else:
        # Unspecified law defaults to the feedback run; a projection run
        # without an explicit law gets law=off rather than an error.
        law = FeedbackLaw.OFF if renormalize else FeedbackLaw.TARGET_NORM

    try:
        initial = InitialCondition.parse(raw.get("initial", "sech"))
    except ValueError as exc:
        raise ConfigError(f"key 'initial': {exc}") from None

    if "alphas" in raw:
        parts = [p for p in raw["alphas"].split(",") if p.strip()]
        alpha_values = [_parse_float(p.strip(), "alphas") for p in parts]
    else:
        alpha_values = list(DEFAULT_ALPHAS)
    if kind == "alpha_sweep":
        if not alpha_values:
            raise ConfigError("key 'alphas': sweep needs at least one value")
        if any(a < 0 for a in alpha_values):
            raise ConfigError("key 'alphas': every value must be nonnegative")

    if "out_dir" not in raw:
        raise ConfigError("key 'out_dir' is required (set it in the config or pass --out-dir)")

    base = SolverConfig(
        physics=PhysicsParams(g=g),
        grid=GridSpec(length=length, points=points),
        dtau=dtau,
        max_steps=max_steps,
        law=law,
        alpha=alpha,
        target_norm_sq=target_norm_sq,
        initial=initial,
        renormalize_every_step=renormalize,
        record_every=record_every,
        convergence_tol=convergence_tol,
    )
    return ExperimentSpec(
        kind=kind,
        base=base,
        alpha_values=alpha_values,
        out_dir=Path(raw["out_dir"]),
    )


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _write_csv(path: Path, header: list[str], rows) -> None:
    """Write to a temp file in the same directory, then rename into place."""
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def write_series(path: Path, result: RunResult) -> None:
    rows = [
        [_fmt(r.tau), _fmt(r.norm_sq), _fmt(r.mu), _fmt(r.l2_error), _fmt(r.energy)]
        for r in result.series
    ]
    _write_csv(path, SERIES_HEADER, rows)


def write_profile(path: Path, result: RunResult) -> None:
    psi = result.final_psi
    x = psi.grid.coordinates
    ref = 1.0 / np.cosh(x)
    rows = [
        [_fmt(x[j]), _fmt(psi.values[j].real), _fmt(psi.values[j].imag),
         _fmt(abs(psi.values[j])), _fmt(ref[j])]
        for j in range(psi.grid.points)
    ]
    _write_csv(path, PROFILE_HEADER, rows)


def run_experiment(spec: ExperimentSpec) -> ExperimentOutcome:
    spec.out_dir.mkdir(parents=True, exist_ok=True)
    outcome = ExperimentOutcome(files=[], results={})

    def emit(name: str, result: RunResult) -> None:
        suffix = f"_{name}" if name else ""
        series_path = spec.out_dir / f"series{suffix}.csv"
        profile_path = spec.out_dir / f"profile{suffix}.csv"
        write_series(series_path, result)
        write_profile(profile_path, result)
        outcome.files += [series_path, profile_path]
        outcome.results[name or "single"] = result

    if spec.kind == "single":
        emit("", run(spec.base))
    elif spec.kind == "baseline_compare":
        projected = replace(
            spec.base, law=FeedbackLaw.OFF, renormalize_every_step=True
        )
        unstabilized = replace(
            spec.base, law=FeedbackLaw.OFF, renormalize_every_step=False
        )
        feedback = replace(spec.base, renormalize_every_step=False)
        emit("projected", run(projected))
        emit("unstabilized", run(unstabilized))
        emit("feedback", run(feedback))
    else:  # alpha_sweep
        summary_rows = []
        for alpha in spec.alpha_values:
            result = run(replace(spec.base, alpha=alpha, renormalize_every_step=False))
            emit(f"alpha_{alpha:g}", result)
            last = result.series[-1]
            summary_rows.append(
                [_fmt(alpha), _fmt(last.norm_sq), _fmt(abs(last.mu)),
                 _fmt(last.l2_error), result.termination.value, str(result.steps_taken)]
            )
        summary_path = spec.out_dir / "summary.csv"
        _write_csv(summary_path, SUMMARY_HEADER, summary_rows)
        outcome.files.append(summary_path)
    return outcome


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nlse-ite",
        description="Imaginary-time NLSE experiments with feedback norm stabilization",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_parser = sub.add_parser("run", help="run the experiment described by a config file")
    run_parser.add_argument("config", help="path to a key=value config document")
    for key in sorted(KNOWN_KEYS - {"out_dir"}):
        run_parser.add_argument(f"--{key}", dest=f"key_{key}", metavar="VALUE")
    run_parser.add_argument("--out-dir", dest="key_out_dir", metavar="DIR")
    args = parser.parse_args(argv)

    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config file: {exc}", file=sys.stderr)
        return 1
    overrides = {
        key: getattr(args, f"key_{key}")
        for key in KNOWN_KEYS
        if getattr(args, f"key_{key}") is not None
    }
    try:
        spec = parse_config(text, overrides)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    outcome = run_experiment(spec)
    for name, result in outcome.results.items():
        last = result.series[-1]
        print(
            f"{name}: {result.termination.value} after {result.steps_taken} steps, "
            f"norm_sq={last.norm_sq:.6g}, l2_error={last.l2_error:.6g}"
        )
    for path in outcome.files:
        print(f"wrote {path}")
    return 2 if outcome.any_diverged else 0


if __name__ == "__main__":
    sys.exit(main())
