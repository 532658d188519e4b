"""
file: mfbvar/gibbs/configs.py
Run configuration: settings defaults, then an INI run file, then explicit
overrides (command-line flags).
"""
import configparser
import logging
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields
from dataclasses import replace

from django.conf import settings

from mfbvar.gibbs.constants import DEFAULT_BURN_IN
from mfbvar.gibbs.constants import DEFAULT_FACTORS
from mfbvar.gibbs.constants import DEFAULT_ITERATIONS
from mfbvar.gibbs.constants import DEFAULT_LAGS
from mfbvar.gibbs.constants import DEFAULT_THIN
from mfbvar.gibbs.exceptions import McmcConfigurationError
from mfbvar.priors.configs import FsvPriorConfig
from mfbvar.priors.configs import MinnesotaConfig
from mfbvar.priors.exceptions import PriorConfigurationError
from mfbvar.regression.constants import SamplerPolicy
from mfbvar.smoothing.constants import DEFAULT_INIT_SCALE
from mfbvar.smoothing.constants import SmootherVariant
from mfbvar.varmodel.constants import DEFAULT_QUARTER_PHASE
from mfbvar.varmodel.constants import MIN_AGGREGATION_LAGS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class McmcConfig:
    iterations: int = DEFAULT_ITERATIONS
    burn_in: int = DEFAULT_BURN_IN
    thin: int = DEFAULT_THIN
    n_lags: int = DEFAULT_LAGS
    n_factors: int = DEFAULT_FACTORS
    seed: int = 0
    chain: int = 0
    sampler: str = SamplerPolicy.AUTO
    workers: int = 1
    smoother: str = SmootherVariant.ADAPTIVE_UNIVARIATE
    init_scale: float = DEFAULT_INIT_SCALE
    store_latent: bool = True
    checkpoint_every: int = 0

    def __post_init__(self):
        if not 0 <= self.burn_in <= self.iterations:
            msg = f"burn-in {self.burn_in} must lie in [0, {self.iterations}]"
            raise McmcConfigurationError(msg)
        if self.thin < 1:
            msg = f"thinning stride must be at least 1, got {self.thin}"
            raise McmcConfigurationError(msg)
        if self.n_lags < MIN_AGGREGATION_LAGS:
            msg = f"the quarterly aggregation needs p >= {MIN_AGGREGATION_LAGS}, got {self.n_lags}"
            raise McmcConfigurationError(msg)
        if self.n_factors < 0 or self.workers < 1 or self.checkpoint_every < 0 or self.chain < 0:
            msg = "factors, chain and checkpoint interval must be non-negative and workers positive"
            raise McmcConfigurationError(msg)
        if self.sampler not in {choice for choice, _ in SamplerPolicy.CHOICES}:
            msg = f"unknown sampler policy '{self.sampler}'"
            raise McmcConfigurationError(msg)
        if self.smoother not in {choice for choice, _ in SmootherVariant.CHOICES}:
            msg = f"unknown smoother variant '{self.smoother}'"
            raise McmcConfigurationError(msg)
        if self.init_scale <= 0:
            msg = "initial state variance must be positive"
            raise McmcConfigurationError(msg)

    @property
    def n_retained(self) -> int:
        return (self.iterations - self.burn_in) // self.thin

    def is_retained(self, iteration: int) -> bool:
        """Iterations are 0-based; the last of every stride after burn-in is kept."""
        offset = iteration - self.burn_in + 1
        return offset > 0 and offset % self.thin == 0


@dataclass(frozen=True)
class RunConfig:
    mcmc: McmcConfig = field(default_factory=McmcConfig)
    minnesota: dict = field(default_factory=dict)
    fsv_prior: FsvPriorConfig = field(default_factory=FsvPriorConfig)
    quarter_phase: int = DEFAULT_QUARTER_PHASE
    io: dict = field(default_factory=dict)

    def minnesota_config(self, scales) -> MinnesotaConfig:
        return MinnesotaConfig.for_model(scales, **self.minnesota)

    def to_dict(self) -> dict:
        return {
            "mcmc": asdict(self.mcmc),
            "minnesota": dict(self.minnesota),
            "fsv_prior": asdict(self.fsv_prior),
            "quarter_phase": self.quarter_phase,
            "io": {key: str(value) for key, value in self.io.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return cls(
            mcmc=McmcConfig(**data.get("mcmc", {})),
            minnesota=dict(data.get("minnesota", {})),
            fsv_prior=FsvPriorConfig(**data.get("fsv_prior", {})),
            quarter_phase=data.get("quarter_phase", DEFAULT_QUARTER_PHASE),
            io=dict(data.get("io", {})),
        )


# (section, key) -> (target, field name, type)
FILE_SCHEMA = {
    ("model", "lags"): ("mcmc", "n_lags", int),
    ("model", "factors"): ("mcmc", "n_factors", int),
    ("model", "init_scale"): ("mcmc", "init_scale", float),
    ("model", "quarter_phase"): ("run", "quarter_phase", int),
    ("model", "loading_restriction"): ("fsv_prior", "loading_restriction", str),
    ("prior", "lambda1"): ("minnesota", "lambda1", float),
    ("prior", "lambda2"): ("minnesota", "lambda2", float),
    ("prior", "lambda3"): ("minnesota", "lambda3", float),
    ("prior", "intercept_scale"): ("minnesota", "intercept_scale", float),
    ("prior", "mu_mean"): ("fsv_prior", "mu_mean", float),
    ("prior", "mu_variance"): ("fsv_prior", "mu_variance", float),
    ("prior", "phi_a"): ("fsv_prior", "phi_a", float),
    ("prior", "phi_b"): ("fsv_prior", "phi_b", float),
    ("prior", "sigma_scale"): ("fsv_prior", "sigma_scale", float),
    ("prior", "loading_variance"): ("fsv_prior", "loading_variance", float),
    ("mcmc", "iterations"): ("mcmc", "iterations", int),
    ("mcmc", "burn_in"): ("mcmc", "burn_in", int),
    ("mcmc", "thin"): ("mcmc", "thin", int),
    ("mcmc", "seed"): ("mcmc", "seed", int),
    ("mcmc", "chain"): ("mcmc", "chain", int),
    ("mcmc", "sampler"): ("mcmc", "sampler", str),
    ("mcmc", "workers"): ("mcmc", "workers", int),
    ("mcmc", "smoother"): ("mcmc", "smoother", str),
    ("mcmc", "store_latent"): ("mcmc", "store_latent", bool),
    ("mcmc", "checkpoint_every"): ("mcmc", "checkpoint_every", int),
    ("io", "data"): ("io", "data", str),
    ("io", "meta"): ("io", "meta", str),
    ("io", "as_of"): ("io", "as_of", str),
    ("io", "out"): ("io", "out", str),
}

# MFBVAR settings key -> (target, field name)
SETTINGS_SCHEMA = {
    "ITERATIONS": ("mcmc", "iterations"),
    "BURN_IN": ("mcmc", "burn_in"),
    "THIN": ("mcmc", "thin"),
    "LAGS": ("mcmc", "n_lags"),
    "FACTORS": ("mcmc", "n_factors"),
    "SEED": ("mcmc", "seed"),
    "SAMPLER": ("mcmc", "sampler"),
    "WORKERS": ("mcmc", "workers"),
    "SMOOTHER": ("mcmc", "smoother"),
    "INIT_SCALE": ("mcmc", "init_scale"),
    "STORE_LATENT": ("mcmc", "store_latent"),
    "CHECKPOINT_EVERY": ("mcmc", "checkpoint_every"),
    "QUARTER_PHASE": ("run", "quarter_phase"),
}

_BOOLEANS = configparser.ConfigParser.BOOLEAN_STATES


def _coerce(raw: str, kind: type, where: str):
    try:
        if kind is bool:
            return _BOOLEANS[raw.strip().lower()]
        return kind(raw.strip())
    except (KeyError, ValueError):
        msg = f"{where}: cannot read '{raw}' as {kind.__name__}"
        raise McmcConfigurationError(msg) from None


def read_run_file(path) -> dict[tuple[str, str], object]:
    """Typed values of an INI run file, keyed (target, field)."""
    parser = configparser.ConfigParser()
    if not parser.read(path):
        msg = f"cannot read run configuration {path}"
        raise McmcConfigurationError(msg)
    values = {}
    for section in parser.sections():
        for key, raw in parser[section].items():
            try:
                target, name, kind = FILE_SCHEMA[(section, key)]
            except KeyError:
                msg = f"unknown setting '{key}' in section [{section}] of {path}"
                raise McmcConfigurationError(msg) from None
            values[(target, name)] = _coerce(raw, kind, f"[{section}] {key}")
    return values


def settings_defaults() -> dict[tuple[str, str], object]:
    engine = getattr(settings, "MFBVAR", {})
    return {SETTINGS_SCHEMA[key]: value for key, value in engine.items() if key in SETTINGS_SCHEMA}


def _split(layer: dict[tuple[str, str], object], target: str) -> dict:
    return {name: value for (where, name), value in layer.items() if where == target}


def load_run_config(path=None, overrides: dict[tuple[str, str], object] | None = None) -> RunConfig:
    """
    Merge settings.MFBVAR, the optional run file and ``overrides`` (later
    layers win). Override keys are (target, field) pairs as in FILE_SCHEMA,
    e.g. ("mcmc", "iterations").
    """
    merged = settings_defaults()
    if path:
        merged.update(read_run_file(path))
    merged.update({key: value for key, value in (overrides or {}).items() if value is not None})

    known_mcmc = {f.name for f in fields(McmcConfig)}
    unknown = sorted(name for name in _split(merged, "mcmc") if name not in known_mcmc)
    if unknown:
        msg = f"unknown MCMC settings: {', '.join(unknown)}"
        raise McmcConfigurationError(msg)
    try:
        fsv_prior = FsvPriorConfig(**_split(merged, "fsv_prior"))
    except PriorConfigurationError as exc:
        raise McmcConfigurationError(str(exc)) from exc
    config = RunConfig(
        mcmc=McmcConfig(**_split(merged, "mcmc")),
        minnesota=_split(merged, "minnesota"),
        fsv_prior=fsv_prior,
        io=_split(merged, "io"),
    )
    run = _split(merged, "run")
    if "quarter_phase" in run:
        config = replace(config, quarter_phase=int(run["quarter_phase"]))
    logger.debug("run configuration %s", config.to_dict())
    return config
