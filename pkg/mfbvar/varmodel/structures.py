"""
file: mfbvar/varmodel/structures.py
Domain types of the mixed-frequency VAR with factor stochastic volatility.

Variables are always ordered monthly first, then quarterly. Time runs over
t = 0 .. T-1 at the monthly frequency.
"""
import logging
from dataclasses import dataclass
from dataclasses import replace

import numpy as np

from mfbvar.varmodel.constants import DEFAULT_QUARTER_PHASE
from mfbvar.varmodel.constants import QUARTER_PHASES
from mfbvar.varmodel.exceptions import DatasetValidationError
from mfbvar.varmodel.exceptions import DimensionMismatchError
from mfbvar.varmodel.exceptions import NonFiniteInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VarParameters:
    """
    Intercept and lag matrices of x_t = c + Pi_1 x_{t-1} + ... + Pi_p x_{t-p} + u_t.

    ``lags[l - 1]`` holds Pi_l.
    """

    intercept: np.ndarray
    lags: np.ndarray
    n_monthly: int

    def __post_init__(self):
        intercept = np.asarray(self.intercept, dtype=float)
        lags = np.asarray(self.lags, dtype=float)
        object.__setattr__(self, "intercept", intercept)
        object.__setattr__(self, "lags", lags)
        if lags.ndim != 3 or lags.shape[1] != lags.shape[2]:
            msg = f"lag coefficients must have shape (p, n, n), got {lags.shape}"
            raise DimensionMismatchError(msg)
        if lags.shape[0] < 1:
            msg = "a VAR needs at least one lag"
            raise DimensionMismatchError(msg)
        if intercept.shape != (lags.shape[1],):
            msg = f"intercept has shape {intercept.shape}, expected ({lags.shape[1]},)"
            raise DimensionMismatchError(msg)
        if not 0 <= self.n_monthly <= lags.shape[1]:
            msg = f"n_monthly={self.n_monthly} outside [0, {lags.shape[1]}]"
            raise DimensionMismatchError(msg)
        if not (np.all(np.isfinite(intercept)) and np.all(np.isfinite(lags))):
            msg = "VAR coefficients must be finite"
            raise NonFiniteInputError(msg)

    @property
    def n_vars(self) -> int:
        return self.lags.shape[1]

    @property
    def n_quarterly(self) -> int:
        return self.n_vars - self.n_monthly

    @property
    def n_lags(self) -> int:
        return self.lags.shape[0]

    @classmethod
    def zeros(cls, n_monthly: int, n_quarterly: int, n_lags: int) -> "VarParameters":
        n = n_monthly + n_quarterly
        return cls(np.zeros(n), np.zeros((n_lags, n, n)), n_monthly)

    @classmethod
    def from_rows(cls, rows: np.ndarray, n_monthly: int) -> "VarParameters":
        """
        Build from the regression layout: row i is (c_i, Pi_1[i, :], ..., Pi_p[i, :]).
        """
        rows = np.asarray(rows, dtype=float)
        n = rows.shape[0]
        if (rows.shape[1] - 1) % n:
            msg = f"coefficient rows of width {rows.shape[1]} do not fit n={n}"
            raise DimensionMismatchError(msg)
        n_lags = (rows.shape[1] - 1) // n
        lags = rows[:, 1:].reshape(n, n_lags, n).transpose(1, 0, 2)
        return cls(rows[:, 0].copy(), lags.copy(), n_monthly)

    def coefficient_rows(self) -> np.ndarray:
        """Inverse of ``from_rows``: an n x (np + 1) matrix."""
        stacked = self.lags.transpose(1, 0, 2).reshape(self.n_vars, -1)
        return np.column_stack([self.intercept, stacked])

    def padded(self, n_lags: int) -> "VarParameters":
        """Same process written with extra zero lag matrices."""
        if n_lags < self.n_lags:
            msg = f"cannot pad {self.n_lags} lags down to {n_lags}"
            raise DimensionMismatchError(msg)
        extra = np.zeros((n_lags - self.n_lags, self.n_vars, self.n_vars))
        return replace(self, lags=np.concatenate([self.lags, extra]))

    def _blocks(self, rows: slice, cols: slice) -> np.ndarray:
        return np.hstack([lag[rows, cols] for lag in self.lags])

    @property
    def monthly(self) -> slice:
        return slice(0, self.n_monthly)

    @property
    def quarterly(self) -> slice:
        return slice(self.n_monthly, self.n_vars)

    @property
    def pi_mm(self) -> np.ndarray:
        return self._blocks(self.monthly, self.monthly)

    @property
    def pi_mq(self) -> np.ndarray:
        return self._blocks(self.monthly, self.quarterly)

    @property
    def pi_qm(self) -> np.ndarray:
        return self._blocks(self.quarterly, self.monthly)

    @property
    def pi_qq(self) -> np.ndarray:
        return self._blocks(self.quarterly, self.quarterly)

    @property
    def pi_mc(self) -> np.ndarray:
        return self.intercept[self.monthly]

    @property
    def pi_qc(self) -> np.ndarray:
        return self.intercept[self.quarterly]

    def spectral_radius(self) -> float:
        n, p = self.n_vars, self.n_lags
        companion = np.zeros((n * p, n * p))
        companion[:n] = np.hstack(list(self.lags))
        companion[n:, : n * (p - 1)] = np.eye(n * (p - 1))
        return float(np.max(np.abs(np.linalg.eigvals(companion))))


@dataclass
class FsvState:
    """
    Factor stochastic volatility block: u_t = Lambda f_t + nu_t.

    Paths cover the estimation periods t = start .. start + rows - 1; the
    first ``start`` periods of the sample are presample lags.
    """

    loadings: np.ndarray
    factors: np.ndarray
    idio_logvol: np.ndarray
    factor_logvol: np.ndarray
    idio_mu: np.ndarray
    idio_phi: np.ndarray
    idio_sigma: np.ndarray
    factor_phi: np.ndarray
    factor_sigma: np.ndarray
    start: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self):
        n, r = self.loadings.shape
        periods = self.idio_logvol.shape[0]
        expected = {
            "factors": (periods, r),
            "idio_logvol": (periods, n),
            "factor_logvol": (periods, r),
            "idio_mu": (n,),
            "idio_phi": (n,),
            "idio_sigma": (n,),
            "factor_phi": (r,),
            "factor_sigma": (r,),
        }
        for name, shape in expected.items():
            if getattr(self, name).shape != shape:
                msg = f"{name} has shape {getattr(self, name).shape}, expected {shape}"
                raise DimensionMismatchError(msg)
        phis = np.concatenate([self.idio_phi, self.factor_phi])
        sigmas = np.concatenate([self.idio_sigma, self.factor_sigma])
        if np.any(np.abs(phis) >= 1.0):
            msg = "every SV persistence must lie strictly inside (-1, 1)"
            raise DatasetValidationError(msg)
        if np.any(sigmas <= 0.0):
            msg = "every SV innovation sd must be positive"
            raise DatasetValidationError(msg)
        if not (np.all(np.isfinite(self.idio_logvol)) and np.all(np.isfinite(self.factor_logvol))):
            msg = "log-volatility paths must be finite"
            raise NonFiniteInputError(msg)

    @property
    def n_vars(self) -> int:
        return self.loadings.shape[0]

    @property
    def n_factors(self) -> int:
        return self.loadings.shape[1]

    @property
    def n_periods(self) -> int:
        return self.idio_logvol.shape[0]

    def row(self, t: int) -> int:
        index = t - self.start
        if not 0 <= index < self.n_periods:
            msg = f"period {t} outside the volatility sample [{self.start}, {self.start + self.n_periods})"
            raise DimensionMismatchError(msg)
        return index

    def idio_variance(self, t: int) -> np.ndarray:
        return np.exp(self.idio_logvol[self.row(t)])

    def factor_variance(self, t: int) -> np.ndarray:
        return np.exp(self.factor_logvol[self.row(t)])

    def factor_shift(self, t: int) -> np.ndarray:
        return self.loadings @ self.factors[self.row(t)]

    def common_component(self) -> np.ndarray:
        """Lambda f_t for every estimation period, shape (periods, n)."""
        return self.factors @ self.loadings.T

    def copy(self) -> "FsvState":
        return FsvState(**{
            name: (value.copy() if isinstance(value, np.ndarray) else value)
            for name, value in self.__dict__.items()
        })

    @classmethod
    def constant(
        cls, n_vars: int, n_factors: int, n_periods: int, *,
        idio_logvol: float | np.ndarray = 0.0, factor_logvol: float = 0.0, start: int = 0,
    ) -> "FsvState":
        """Flat volatility with zero loadings and factors."""
        idio = np.broadcast_to(np.asarray(idio_logvol, dtype=float), (n_vars,))
        return cls(
            loadings=np.zeros((n_vars, n_factors)),
            factors=np.zeros((n_periods, n_factors)),
            idio_logvol=np.tile(idio, (n_periods, 1)),
            factor_logvol=np.full((n_periods, n_factors), float(factor_logvol)),
            idio_mu=idio.copy(),
            idio_phi=np.full(n_vars, 0.9),
            idio_sigma=np.full(n_vars, 0.2),
            factor_phi=np.full(n_factors, 0.9),
            factor_sigma=np.full(n_factors, 0.2),
            start=start,
        )


@dataclass
class MixedFrequencyDataset:
    """
    Monthly and quarterly observations on a common monthly grid.

    ``values`` is T x n with NaN marking missing cells; monthly columns come
    first. Quarterly columns may only be observed at quarter-end periods,
    i.e. where ``t % 3 == quarter_phase``.
    """

    values: np.ndarray
    n_monthly: int
    series_ids: tuple[str, ...] = ()
    quarter_phase: int = DEFAULT_QUARTER_PHASE
    means: np.ndarray | None = None
    scales: np.ndarray | None = None
    periods: tuple[str, ...] = ()

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            msg = "dataset values must be a T x n matrix"
            raise DatasetValidationError(msg)
        n = self.values.shape[1]
        if not self.series_ids:
            self.series_ids = tuple(f"x{i}" for i in range(n))
        if self.means is None:
            self.means = np.zeros(n)
        if self.scales is None:
            self.scales = np.ones(n)
        self.validate()

    def validate(self):
        n = self.n_vars
        if not 0 <= self.n_monthly <= n:
            msg = f"n_monthly={self.n_monthly} outside [0, {n}]"
            raise DatasetValidationError(msg)
        if len(self.series_ids) != n:
            msg = f"{len(self.series_ids)} series ids for {n} columns"
            raise DatasetValidationError(msg)
        if self.quarter_phase not in QUARTER_PHASES:
            msg = f"quarter phase must be one of {QUARTER_PHASES}"
            raise DatasetValidationError(msg)
        if np.any(np.isinf(self.values)):
            msg = "observations must be finite or NaN"
            raise DatasetValidationError(msg)
        if np.any(self.scales <= 0):
            msg = "standardization scales must be positive"
            raise DatasetValidationError(msg)
        off_quarter = ~self.quarter_end_mask()
        quarterly = self.observed[:, self.n_monthly:]
        if np.any(quarterly[off_quarter]):
            bad = int(np.argmax(np.any(quarterly & off_quarter[:, None], axis=1)))
            msg = f"quarterly value observed at non-quarter-end period {bad}"
            raise DatasetValidationError(msg)

    @property
    def n_periods(self) -> int:
        return self.values.shape[0]

    @property
    def n_vars(self) -> int:
        return self.values.shape[1]

    @property
    def n_quarterly(self) -> int:
        return self.n_vars - self.n_monthly

    @property
    def observed(self) -> np.ndarray:
        return ~np.isnan(self.values)

    @property
    def monthly_values(self) -> np.ndarray:
        return self.values[:, : self.n_monthly]

    @property
    def quarterly_values(self) -> np.ndarray:
        return self.values[:, self.n_monthly:]

    def is_quarter_end(self, t: int) -> bool:
        return t % 3 == self.quarter_phase

    def quarter_end_mask(self) -> np.ndarray:
        return np.arange(self.n_periods) % 3 == self.quarter_phase

    @property
    def balanced_end(self) -> int:
        """
        Index of the last period with every monthly series observed.

        Periods after it form the ragged edge; gaps before it are interior
        gaps. Equals T - 1 for a balanced panel and -1 when no period has a
        complete monthly cross-section.
        """
        complete = np.flatnonzero(np.all(self.observed[:, : self.n_monthly], axis=1))
        return int(complete[-1]) if complete.size else -1

    def observation_pattern(self, t: int) -> tuple[np.ndarray, np.ndarray]:
        """Observed monthly indices and observed quarterly indices (within block)."""
        observed = self.observed[t]
        return (
            np.flatnonzero(observed[: self.n_monthly]),
            np.flatnonzero(observed[self.n_monthly:]),
        )

    def observation_counts(self) -> np.ndarray:
        return self.observed.sum(axis=0)

    def destandardize(self, values: np.ndarray) -> np.ndarray:
        return values * self.scales + self.means


@dataclass(frozen=True)
class StateSpaceSystem:
    """
    Period-t matrices of the compact form

        y_t     = C_t w_t + Z_t alpha_t + G_t eps_t
        alpha_t = D_t w_t + T_t alpha_{t-1} + H_t eps_t

    with alpha_t = (x_{q,t}, ..., x_{q,t-p}) newest first and
    w_t = (y_{m,t-1}, ..., y_{m,t-p}, 1).
    """

    design: np.ndarray
    obs_exog: np.ndarray
    obs_loading: np.ndarray
    transition: np.ndarray
    state_exog: np.ndarray
    state_loading: np.ndarray
    n_monthly: int
    n_quarterly: int
    n_lags: int

    def __post_init__(self):
        n = self.n_monthly + self.n_quarterly
        m = self.state_dim
        k = self.n_monthly * self.n_lags + 1
        expected = {
            "design": (n, m),
            "obs_exog": (n, k),
            "obs_loading": (n, n),
            "transition": (m, m),
            "state_exog": (m, k),
            "state_loading": (m, n),
        }
        for name, shape in expected.items():
            if getattr(self, name).shape != shape:
                msg = f"{name} has shape {getattr(self, name).shape}, expected {shape}"
                raise DimensionMismatchError(msg)

    @property
    def state_dim(self) -> int:
        return self.n_quarterly * (self.n_lags + 1)

    @property
    def n_regressors(self) -> int:
        return self.n_monthly * self.n_lags + 1

    def regressors(self, monthly_history: np.ndarray) -> np.ndarray:
        """
        w_t from the p most recent monthly rows, given oldest first.
        """
        history = np.asarray(monthly_history, dtype=float)
        if history.shape != (self.n_lags, self.n_monthly):
            msg = f"monthly history has shape {history.shape}, expected ({self.n_lags}, {self.n_monthly})"
            raise DimensionMismatchError(msg)
        return np.append(history[::-1].ravel(), 1.0)
