"""Suite configuration, seeded execution and JSON reports."""
from __future__ import annotations

import os
import re
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import functions as fn
from . import linalg as la
from . import maps as mp
from . import means as mn
from . import inequalities as iq
from .checks import CheckResult, Inequality, run_check
from .linalg import Interval
from .serialize import dumps

SCHEMA_VERSION = 1
OUTPUT_CAP = 4096
ENV_PREFIX = "MLINEQ_"

FAMILIES = (
    "adjoint",
    "monotone",
    "russo_dye",
    "cdj",
    "power_family",
    "power_monotonicity",
    "ando",
    "mean_symmetrization",
    "fiedler",
    "choi_normal",
    "schwarz",
    "kantorovich",
    "convexity",
    "reverse_cdj",
    "reverse_ando",
    "reverse_mean_additivity",
    "reverse_symmetrization",
    "info_power",
    "info_karcher",
    "catalog",
)


class ConfigError(ValueError):
    """Invalid configuration; maps to exit code 2."""


@dataclass
class SuiteConfig:
    checks: list[str] = field(default_factory=lambda: list(FAMILIES))
    q: int = 3
    k: int = 2
    n: int = 2
    interval: Interval = Interval(1.0, 2.0)
    trials: int = 200
    seed: int = 42
    tol: float = 1e-8
    out: str = "report.json"
    witness_dir: str = "witnesses"
    jobs: int = 1

    def __post_init__(self):
        unknown = [c for c in self.checks if c not in FAMILIES]
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)} (known: {', '.join(FAMILIES)})")
        if self.q < 1 or self.k < 1 or self.n < 1:
            raise ConfigError("q, k and n must be >= 1")
        if self.q**self.k > OUTPUT_CAP:
            raise ConfigError(f"q^k = {self.q ** self.k} exceeds the tensor output cap {OUTPUT_CAP}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if not self.tol >= 0:
            raise ConfigError("tol must be >= 0")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def echo(self) -> dict:
        """Config as recorded in the report (``jobs`` does not affect results and is left out)."""
        return {
            "checks": list(self.checks),
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "interval": self.interval.as_list(),
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
        }


def parse_interval(text) -> Interval:
    if isinstance(text, Interval):
        return text
    if isinstance(text, str):
        parts = text.split(",")
    else:
        parts = list(text)
    if len(parts) != 2:
        raise ConfigError(f"spectrum needs two values m,M; got {text!r}")
    try:
        m, M = (float(p) for p in parts)
        return Interval(m, M)
    except ValueError as exc:
        raise ConfigError(f"bad spectrum {text!r}: {exc}") from None


def _coerce(key: str, value):
    """Convert a raw file/env/flag value to the SuiteConfig field type."""
    try:
        if key == "checks":
            if isinstance(value, str):
                return [c.strip() for c in value.split(",") if c.strip()]
            return [str(c) for c in value]
        if key in ("interval", "spectrum"):
            return parse_interval(value)
        if key in ("q", "k", "n", "trials", "seed", "jobs"):
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        if key == "tol":
            return float(value)
        if key in ("out", "witness_dir"):
            return str(value)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc
    raise ConfigError(f"unknown config key {key!r}")


CONFIG_KEYS = ("checks", "q", "k", "n", "interval", "trials", "seed", "tol", "out", "witness_dir", "jobs")


def load_config_file(path) -> dict:
    import json

    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    out = {}
    for key, value in data.items():
        key = "interval" if key == "spectrum" else key
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r} in {path}")
        out[key] = _coerce(key, value)
    return out


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out = {}
    for key in CONFIG_KEYS:
        names = [ENV_PREFIX + key.upper()] + ([ENV_PREFIX + "SPECTRUM"] if key == "interval" else [])
        for name in names:
            if name in environ:
                out[key] = _coerce(key, environ[name])
    return out


def build_config(flags: dict, file: str | None = None, environ=None) -> SuiteConfig:
    """Merge flags over environment over file over defaults."""
    values = {}
    if file is not None:
        values.update(load_config_file(file))
    values.update(env_overrides(environ))
    values.update({k: _coerce(k, v) for k, v in flags.items() if v is not None})
    return SuiteConfig(**values)


# ----------------------------------------------------------------------------
# the suite


def standard_maps(config: SuiteConfig) -> list[mp.MapDescriptor]:
    """Tensor, Hadamard, normalized trace pair (k = 2), one congruence-transformed and one linear-composed map."""
    q, k = config.q, config.k
    rng = la.trial_rng(config.seed, zlib.crc32(b"standard-maps"), 0)
    out = [mp.tensor_map(q, k), mp.hadamard_map(q, k)]
    if k == 2:
        out.append(mp.normalized_trace_pair(q))
    anchors = [la.random_positive(q, Interval(0.5, 2.0), rng) for _ in range(k)]
    out.append(mp.congruence_transformed(mp.hadamard_map(q, k), anchors))
    out.append(mp.compression_transpose_map(q, k, rng))
    return out


def _instances(family: str, config: SuiteConfig, maps) -> list[tuple[type, dict]]:
    spec = config.interval
    bilinear = [phi for phi in maps if phi.k == 2]
    if family == "adjoint":
        return [(iq.AdjointPreserving, dict(phi=phi)) for phi in maps]
    if family == "monotone":
        return [(iq.Monotone, dict(phi=phi, spectrum=spec)) for phi in maps]
    if family == "russo_dye":
        return [(iq.RussoDye, dict(phi=phi)) for phi in maps]
    if family == "cdj":
        fs = [(fn.power(2.0), "convex"), (fn.power(-1.0), "convex"), (fn.power(0.5), "concave")]
        return [(iq.ChoiDavisJensen, dict(phi=phi, f=f, direction=d, spectrum=spec)) for phi in maps for f, d in fs]
    if family == "power_family":
        return [(iq.PowerFamily, dict(phi=phi, r=r, spectrum=spec)) for phi in maps for r in (-1.0, -0.5, 0.5, 2.0)]
    if family == "power_monotonicity":
        pairs = [(1.0, 2.0), (-2.0, 1.0), (0.5, 2.0), (-2.0, -0.5)]
        return [(iq.PowerMonotonicity, dict(phi=phi, s=s, t=t, spectrum=spec)) for phi in maps for s, t in pairs]
    if family == "ando":
        return [(iq.AndoMultilinear, dict(phi=phi, mean=mn.geometric(a), spectrum=spec)) for phi in maps for a in (0.5, 0.3)]
    if family == "mean_symmetrization":
        return [
            (iq.MeanSymmetrization, dict(phi=phi, mean=mn.geometric(a), spectrum=spec)) for phi in bilinear for a in (0.5, 0.3)
        ]
    if family == "fiedler":
        params = [(1.0, 3.0, 0.3), (-1.0, 2.0, 0.25)]
        return [
            (iq.FiedlerExtension, dict(phi=phi, alpha=a, beta=b, lam=l, spectrum=spec)) for phi in bilinear for a, b, l in params
        ]
    if family == "choi_normal":
        return [(iq.ChoiNormal, dict(phi=phi, spectrum=spec)) for phi in maps]
    if family == "schwarz":
        return [(iq.SchwarzMultilinear, dict(phi=phi, variant=v, spectrum=spec)) for phi in maps for v in ("hermitian", "general")]
    if family == "kantorovich":
        out = []
        for phi in bilinear:
            out.append((iq.Kantorovich, dict(phi=phi, variant="congruence", spectrum=spec, n=config.n)))
            if phi.symmetric:
                out.append((iq.Kantorovich, dict(phi=phi, variant="scalar-weights", spectrum=spec, n=config.n)))
        if bilinear:
            out.append((iq.Kantorovich, dict(phi=bilinear[0], variant="rank-one", spectrum=spec)))
        return out
    if family == "convexity":
        return [(iq.ConvexityProfile, dict(phi=phi, mode=m, spectrum=spec)) for phi in bilinear for m in ("center0", "center_half")]
    if family == "reverse_cdj":
        fs = [(fn.power(2.0), "convex"), (fn.power(-1.0), "convex"), (fn.power(0.5), "concave")]
        return [(iq.ReverseCDJ, dict(phi=phi, f=f, direction=d, spectrum=spec)) for phi in maps for f, d in fs]
    if family == "reverse_ando":
        return [(iq.ReverseAndo, dict(phi=phi, mean=mn.geometric(0.5), spectrum=spec)) for phi in maps]
    if family == "reverse_mean_additivity":
        return [(iq.ReverseMeanAdditivity, dict(mean=mn.geometric(a), spectrum=spec, q=config.q)) for a in (0.5, 0.3)]
    if family == "reverse_symmetrization":
        return [(iq.ReverseSymmetrization, dict(phi=phi, mean=mn.geometric(0.5), spectrum=spec)) for phi in bilinear]
    if family == "info_power":
        return [
            (iq.InfoMonotonicityPower, dict(phi=phi, t=t, n=config.n, spectrum=spec)) for phi in maps for t in (1.0, 0.5, -0.5, -1.0)
        ]
    if family == "info_karcher":
        return [(iq.InfoMonotonicityKarcher, dict(phi=phi, n=config.n, spectrum=spec)) for phi in maps]
    raise ConfigError(f"unknown check family {family!r}")


def _error_result(name: str, family: str, config: SuiteConfig, exc: Exception, expected=False) -> CheckResult:
    return CheckResult(
        name=name, family=family, holds=False, worst_margin=float("nan"), worst_scaled_margin=float("nan"),
        trials=0, seed=config.seed, tol=config.tol, expected_failure=expected, error=f"{type(exc).__name__}: {exc}",
    )


def build_suite(config: SuiteConfig) -> list[Inequality | CheckResult]:
    """Instantiate every selected check; construction failures become error results."""
    maps = standard_maps(config)
    out: list[Inequality | CheckResult] = []
    for family in config.checks:
        if family == "catalog":
            out.extend(iq.catalog())
            continue
        for cls, params in _instances(family, config, maps):
            try:
                out.append(cls(**params))
            except Exception as exc:  # recorded, not raised
                label = params["phi"].label if "phi" in params else ""
                out.append(_error_result(f"{family}[{label}]", family, config, exc))
    return out


def _run_one(ineq: Inequality, config: SuiteConfig) -> CheckResult:
    try:
        return run_check(ineq, config.trials, config.seed, config.tol)
    except Exception as exc:
        return _error_result(ineq.name, ineq.family, config, exc, ineq.expected_failure)


def _run_serialized(payload: dict, config: SuiteConfig) -> CheckResult:
    return _run_one(Inequality.from_dict(payload), config)


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: list[CheckResult]
    version: str = __version__

    @property
    def aggregate(self) -> bool:
        return all(r.as_expected for r in self.results)

    @property
    def unexpected(self) -> list[CheckResult]:
        return [r for r in self.results if not r.as_expected]


def run_suite(config: SuiteConfig) -> SuiteReport:
    suite = build_suite(config)
    results: list[CheckResult | None] = [s if isinstance(s, CheckResult) else None for s in suite]
    pending = [(i, s) for i, s in enumerate(suite) if isinstance(s, Inequality)]
    if config.jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            futures = [(i, pool.submit(_run_serialized, s.to_dict(), config)) for i, s in pending]
            for i, fut in futures:
                results[i] = fut.result()
    else:
        for i, s in pending:
            results[i] = _run_one(s, config)
    return SuiteReport(config, results)


def witness_filename(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._=-]+", "_", name).strip("_") + ".json"


def write_witnesses(report: SuiteReport, directory) -> dict[str, str]:
    """Write witnesses for catalog entries and unexpected violations; returns name -> path."""
    refs = {}
    chosen = [r for r in report.results if r.witness is not None and (r.expected_failure or not r.as_expected)]
    if not chosen:
        return refs
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for r in chosen:
        path = directory / witness_filename(r.name)
        path.write_text(dumps(r.witness) + "\n")
        refs[r.name] = str(path)
    return refs


def report_dict(report: SuiteReport, refs: dict[str, str] | None = None) -> dict:
    refs = refs or {}
    return {
        "schema_version": SCHEMA_VERSION,
        "config": report.config.echo(),
        "checks": [r.to_dict(refs.get(r.name)) for r in report.results],
        "aggregate": report.aggregate,
        "version": report.version,
    }


def emit_report(report: SuiteReport, path, witness_dir=None) -> str:
    """Write witnesses (if ``witness_dir``) and the JSON report; returns the report text."""
    refs = write_witnesses(report, witness_dir) if witness_dir is not None else {}
    text = dumps(report_dict(report, refs)) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def strip_timing(text: str) -> str:
    """Report text with ``wall_ms`` values blanked, for determinism comparisons."""
    return re.sub(r'"wall_ms": [^,\n}]+', '"wall_ms": null', text)
