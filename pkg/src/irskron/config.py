"""Experiment definitions for the simulation harness.

Config files are INI-style text with two sections. ``[experiment]`` holds
scalar settings; ``[factorizations]`` lists named factorization configs,
one per line, as ``label = DIMS`` or ``label = DIMS:BITS`` where DIMS and
BITS are x-separated integers (e.g. ``p3 = 16x4x4:8x8x8``). Omitted BITS
default to the baseline resolution on every factor. Any key or section
not listed here is an error.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, replace

from .codec import FactorizationConfig, payload_bits

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "default_config",
    "load_config",
    "parse_factorization",
]

EXPERIMENTS = ("payload-ratio", "adr-vs-k", "fixed-budget")

_EXPERIMENT_KEYS = {
    "n",
    "n_h",
    "n_v",
    "m_t",
    "m_r",
    "trials",
    "seed",
    "sigma2_b",
    "baseline_bits",
    "budget_bits",
    "k_db",
}

_DEFAULT_K_DB = (-20.0, -15.0, -10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0, 60.0)


class ConfigError(ValueError):
    """Invalid experiment configuration; the CLI maps this to exit code 2."""


@dataclass
class ExperimentConfig:
    experiment: str
    n: int
    n_h: int
    n_v: int
    m_t: int
    m_r: int
    trials: int
    seed: int
    sigma2_b: float
    baseline_bits: int
    factorizations: list[tuple[str, FactorizationConfig]]
    k_db: tuple[float, ...] = _DEFAULT_K_DB
    budget_bits: int | None = None
    max_iter: int = 100_000
    tol: float = 1e-12

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.n < 1 or self.trials < 1:
            raise ConfigError("n and trials must be >= 1")
        if self.experiment != "payload-ratio" and self.n_h * self.n_v != self.n:
            raise ConfigError(
                f"IRS grid {self.n_h}x{self.n_v} does not tile n={self.n}"
            )
        if self.sigma2_b <= 0:
            raise ConfigError("sigma2_b must be strictly positive")
        if self.experiment == "fixed-budget":
            if self.budget_bits is None or self.budget_bits < 1:
                raise ConfigError("fixed-budget experiment needs budget_bits >= 1")
            if self.budget_bits // self.n < 1:
                raise ConfigError(
                    f"budget {self.budget_bits} bits cannot carry even 1 bit "
                    f"per element for n={self.n}"
                )
        if self.baseline_bits < 1:
            raise ConfigError("baseline_bits must be >= 1")
        if not self.factorizations:
            raise ConfigError("no factorization configs given")
        labels = [label for label, _ in self.factorizations]
        if len(set(labels)) != len(labels):
            raise ConfigError("duplicate factorization labels")
        for label, cfg in self.factorizations:
            if cfg.n != self.n:
                dims = "x".join(str(d) for d in cfg.dims)
                raise ConfigError(
                    f"factorization {label!r}: dims {dims} have product "
                    f"{cfg.n}, expected n={self.n}"
                )
        if self.experiment == "fixed-budget":
            for label, cfg in self.factorizations:
                used = payload_bits(cfg)
                if used > self.budget_bits:
                    raise ConfigError(
                        f"factorization {label!r} needs {used} bits, over the "
                        f"{self.budget_bits}-bit budget"
                    )


def parse_factorization(text: str, default_bits: int) -> FactorizationConfig:
    """Parse ``DIMS`` or ``DIMS:BITS`` with x-separated integers."""
    parts = text.strip().split(":")
    if len(parts) not in (1, 2):
        raise ConfigError(f"bad factorization spec {text!r}")
    try:
        dims = tuple(int(tok) for tok in parts[0].split("x"))
        if len(parts) == 2:
            bits = tuple(int(tok) for tok in parts[1].split("x"))
        else:
            bits = (default_bits,) * len(dims)
        return FactorizationConfig(dims, bits)
    except ValueError as exc:
        raise ConfigError(f"bad factorization spec {text!r}: {exc}") from exc


def _label(cfg: FactorizationConfig) -> str:
    return f"p{cfg.p}-" + "x".join(str(d) for d in cfg.dims)


def _uniform_set(dims_list: list[tuple[int, ...]], bits: int) -> list[tuple[str, FactorizationConfig]]:
    out = []
    for dims in dims_list:
        cfg = FactorizationConfig.uniform(dims, bits)
        out.append((_label(cfg), cfg))
    return out


def default_config(experiment: str, full_scale: bool = False) -> ExperimentConfig:
    """Built-in experiment setups: desk scale (N=256) by default, N=1024 with
    ``full_scale`` (payload-ratio is pure arithmetic and always runs at 1024)."""
    if experiment == "payload-ratio":
        dims_list = [
            (1024,),
            (512, 2),
            (256, 4),
            (128, 8),
            (64, 16),
            (32, 32),
            (64, 8, 2),
            (16, 8, 8),
            (8, 8, 4, 4),
            (4, 4, 4, 4, 4),
            (2,) * 10,
        ]
        return ExperimentConfig(
            experiment=experiment,
            n=1024,
            n_h=32,
            n_v=32,
            m_t=2,
            m_r=2,
            trials=1,
            seed=1,
            sigma2_b=0.1,
            baseline_bits=3,
            factorizations=_uniform_set(dims_list, 3),
        )
    if experiment == "adr-vs-k":
        if full_scale:
            n, n_h, n_v = 1024, 32, 32
            dims_list = [(32, 32), (16, 8, 8), (8, 8, 4, 4), (2,) * 10]
        else:
            n, n_h, n_v = 256, 16, 16
            dims_list = [(16, 16), (16, 4, 4), (4, 4, 4, 4), (2,) * 8]
        return ExperimentConfig(
            experiment=experiment,
            n=n,
            n_h=n_h,
            n_v=n_v,
            m_t=2,
            m_r=2,
            trials=200,
            seed=1,
            sigma2_b=0.1,
            baseline_bits=3,
            factorizations=_uniform_set(dims_list, 3),
        )
    if experiment == "fixed-budget":
        if full_scale:
            n, n_h, n_v, budget = 1024, 32, 32, 1024
            specs = [
                ((64, 8, 2), (8, 8, 8)),
                ((64, 8, 2), (12, 12, 12)),
                ((128, 4, 2), (7, 7, 7)),
                ((256, 2, 2), (3, 3, 3)),
            ]
        else:
            n, n_h, n_v, budget = 256, 16, 16, 256
            specs = [
                ((16, 4, 4), (8, 8, 8)),
                ((16, 4, 4), (10, 10, 10)),
                ((32, 4, 2), (6, 6, 6)),
                ((64, 2, 2), (3, 3, 3)),
            ]
        factorizations = []
        for dims, bits in specs:
            cfg = FactorizationConfig(dims, bits)
            label = _label(cfg) + "-b" + "x".join(str(b) for b in bits)
            factorizations.append((label, cfg))
        return ExperimentConfig(
            experiment=experiment,
            n=n,
            n_h=n_h,
            n_v=n_v,
            m_t=2,
            m_r=2,
            trials=200,
            seed=1,
            sigma2_b=0.1,
            baseline_bits=budget // n,
            factorizations=factorizations,
            budget_bits=budget,
        )
    raise ConfigError(f"unknown experiment {experiment!r}")


def load_config(path: str, experiment: str, full_scale: bool = False) -> ExperimentConfig:
    """Read an INI file on top of the experiment defaults."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc

    cfg = default_config(experiment, full_scale=full_scale)

    unknown_sections = set(parser.sections()) - {"experiment", "factorizations"}
    if unknown_sections:
        raise ConfigError(f"unknown config sections: {sorted(unknown_sections)}")

    if parser.has_section("experiment"):
        section = parser["experiment"]
        unknown = set(section) - _EXPERIMENT_KEYS
        if unknown:
            raise ConfigError(f"unknown experiment keys: {sorted(unknown)}")
        try:
            for key in ("n", "n_h", "n_v", "m_t", "m_r", "trials", "seed",
                        "baseline_bits", "budget_bits"):
                if key in section:
                    setattr(cfg, key, int(section[key]))
            if "sigma2_b" in section:
                cfg.sigma2_b = float(section["sigma2_b"])
            if "k_db" in section:
                cfg.k_db = tuple(float(tok) for tok in section["k_db"].split(","))
        except ValueError as exc:
            raise ConfigError(f"bad experiment value: {exc}") from exc
        if "n" in section and "n_h" not in section and "n_v" not in section:
            side = math.isqrt(cfg.n)
            if side * side == cfg.n:
                cfg.n_h = cfg.n_v = side
        if (
            experiment == "fixed-budget"
            and "baseline_bits" not in section
            and cfg.budget_bits is not None
        ):
            cfg.baseline_bits = max(cfg.budget_bits // cfg.n, 0)

    if parser.has_section("factorizations"):
        factorizations = []
        for label, value in parser["factorizations"].items():
            factorizations.append((label, parse_factorization(value, cfg.baseline_bits)))
        cfg.factorizations = factorizations

    cfg.validate()
    return cfg


def with_overrides(
    cfg: ExperimentConfig,
    seed: int | None = None,
    trials: int | None = None,
) -> ExperimentConfig:
    out = replace(cfg, factorizations=list(cfg.factorizations))
    if seed is not None:
        out.seed = seed
    if trials is not None:
        out.trials = trials
    out.validate()
    return out
