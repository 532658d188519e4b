"""
file: mfbvar/diagnostics/exporters.py
Posterior summaries of a chain store as delimited text or a compact binary.

Binary layout, little-endian throughout:

    4 bytes   magic b"MFBV"
    uint16    format version (1)
    uint16    number of dimensions d
    d uint64  dimensions
    float64   payload, column-major
"""
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from mfbvar.diagnostics.constants import BAND_PERCENTILES
from mfbvar.diagnostics.constants import BINARY_MAGIC
from mfbvar.diagnostics.constants import BINARY_VERSION
from mfbvar.diagnostics.constants import WHISKER_IQR
from mfbvar.diagnostics.constants import AggregationMode
from mfbvar.diagnostics.constants import ExportFormat
from mfbvar.diagnostics.constants import ExportSelector
from mfbvar.diagnostics.exceptions import BinaryFormatError
from mfbvar.diagnostics.exceptions import ChainTooShortError
from mfbvar.diagnostics.exceptions import UnknownSelectorError
from mfbvar.diagnostics.identification import identify_sign_maximin
from mfbvar.diagnostics.inefficiency import summarize_if
from mfbvar.diagnostics.volatility import gdp_volatility
from mfbvar.gibbs.constants import DrawName

logger = logging.getLogger(__name__)

_HEADER = np.dtype([("magic", "S4"), ("version", "<u2"), ("ndim", "<u2")])


def write_binary(array, path) -> Path:
    array = np.asarray(array, dtype="<f8")
    header = np.array([(BINARY_MAGIC, BINARY_VERSION, array.ndim)], dtype=_HEADER)
    with open(path, "wb") as handle:
        handle.write(header.tobytes())
        handle.write(np.asarray(array.shape, dtype="<u8").tobytes())
        handle.write(array.tobytes(order="F"))
    return Path(path)


def read_binary(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.itemsize:
        msg = f"{path} is too short for a header"
        raise BinaryFormatError(msg)
    header = np.frombuffer(raw[: _HEADER.itemsize], dtype=_HEADER)[0]
    if header["magic"] != BINARY_MAGIC:
        msg = f"{path} does not start with {BINARY_MAGIC!r}"
        raise BinaryFormatError(msg)
    if header["version"] != BINARY_VERSION:
        msg = f"{path} has format version {header['version']}, expected {BINARY_VERSION}"
        raise BinaryFormatError(msg)
    ndim = int(header["ndim"])
    start = _HEADER.itemsize + 8 * ndim
    if len(raw) < start:
        msg = f"{path} is truncated inside the dimensions header"
        raise BinaryFormatError(msg)
    shape = tuple(int(d) for d in np.frombuffer(raw[_HEADER.itemsize : start], dtype="<u8"))
    expected = 8 * int(np.prod(shape, dtype=np.int64))
    if len(raw) - start != expected:
        msg = f"{path} holds {len(raw) - start} payload bytes, expected {expected} for shape {shape}"
        raise BinaryFormatError(msg)
    return np.frombuffer(raw[start:], dtype="<f8").reshape(shape, order="F").copy()


def _fsv_period_labels(store, periods: int) -> list:
    offset = store.n_lags
    if store.periods:
        return [store.periods[offset + t] for t in range(periods)]
    return [offset + t for t in range(periods)]


def _bands(draws: np.ndarray) -> np.ndarray:
    return np.percentile(draws, BAND_PERCENTILES, axis=0)


def pi_posterior_mean(store) -> pd.DataFrame:
    """n x (np + 1) table of posterior mean coefficient rows."""
    rows = store.get(DrawName.PI).mean(axis=0)
    n = rows.shape[0]
    n_lags = (rows.shape[1] - 1) // n
    ids = store.series_ids or [f"x{i}" for i in range(n)]
    columns = ["const"] + [f"L{lag}.{sid}" for lag in range(1, n_lags + 1) for sid in ids]
    return pd.DataFrame(rows, index=pd.Index(ids, name="equation"), columns=columns)


def factor_volatility_bands(store) -> pd.DataFrame:
    """Percentile bands of the factor standard deviation exp(h / 2)."""
    logvol = store.get(DrawName.FACTOR_LOGVOL)
    bands = _bands(np.exp(logvol / 2.0))
    labels = _fsv_period_labels(store, logvol.shape[1])
    frames = []
    for k in range(logvol.shape[2]):
        frame = pd.DataFrame({"period": labels, "factor": k})
        for q, band in zip(BAND_PERCENTILES, bands):
            frame[f"p{q}"] = band[:, k]
        frames.append(frame)
    columns = ["period", "factor", *(f"p{q}" for q in BAND_PERCENTILES)]
    return pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=columns)


def gdp_volatility_bands(store, series: str | None = None, mode: str = AggregationMode.VARIANCE) -> pd.DataFrame:
    """
    Bands of the implied monthly variance and of the quarterly aggregated
    standard deviation of ``series`` (default: the first quarterly series).
    """
    ids = list(store.series_ids)
    if series is None:
        if store.n_quarterly == 0:
            msg = "the chain has no quarterly series"
            raise UnknownSelectorError(msg)
        index = store.n_monthly
    elif series in ids:
        index = ids.index(series)
    else:
        msg = f"unknown series '{series}'"
        raise UnknownSelectorError(msg)

    loadings = store.get(DrawName.LOADINGS)[:, index, :]
    factor_variance = np.exp(store.get(DrawName.FACTOR_LOGVOL))
    idio_variance = np.exp(store.get(DrawName.IDIO_LOGVOL)[:, :, index])
    phase = (store.quarter_phase - store.n_lags) % 3
    paths = [
        gdp_volatility(loadings[d], factor_variance[d], idio_variance[d], phase, mode)
        for d in range(store.n_draws)
    ]
    labels = _fsv_period_labels(store, idio_variance.shape[1])
    monthly = pd.DataFrame({"measure": "monthly_variance", "period": labels})
    for q, band in zip(BAND_PERCENTILES, _bands(np.array([path.monthly_variance for path in paths]))):
        monthly[f"p{q}"] = band
    quarter_ends = paths[0].quarter_ends
    quarterly = pd.DataFrame({"measure": "quarterly_sd", "period": [labels[t] for t in quarter_ends]})
    for q, band in zip(BAND_PERCENTILES, _bands(np.array([path.quarterly_sd for path in paths]))):
        quarterly[f"p{q}"] = band
    return pd.concat([monthly, quarterly], ignore_index=True)


def loading_boxes(store) -> pd.DataFrame:
    """Box-plot statistics of the sign-identified loadings."""
    loadings, _ = identify_sign_maximin(store.get(DrawName.LOADINGS))
    n, r = loadings.shape[1:]
    ids = store.series_ids or [f"x{i}" for i in range(n)]
    rows = []
    for k in range(r):
        for i in range(n):
            draws = loadings[:, i, k]
            q1, median, q3 = np.percentile(draws, [25, 50, 75])
            reach = WHISKER_IQR * (q3 - q1)
            rows.append({
                "series": ids[i],
                "factor": k,
                "whisker_low": draws[draws >= q1 - reach].min(),
                "q1": q1,
                "median": median,
                "q3": q3,
                "whisker_high": draws[draws <= q3 + reach].max(),
            })
    columns = ["series", "factor", "whisker_low", "q1", "median", "q3", "whisker_high"]
    return pd.DataFrame(rows, columns=columns)


def select(store, what: str, mode: str = AggregationMode.VARIANCE):
    """A summary table or, for a draw name, the raw draws array."""
    if store.n_draws == 0:
        msg = "the chain store holds no draws"
        raise ChainTooShortError(msg)
    if what == ExportSelector.PI_MEAN:
        return pi_posterior_mean(store)
    if what == ExportSelector.FACTOR_VOLATILITY:
        return factor_volatility_bands(store)
    if what == ExportSelector.GDP_VOLATILITY:
        return gdp_volatility_bands(store, mode=mode)
    if what == ExportSelector.LOADING_BOXES:
        return loading_boxes(store)
    if what == ExportSelector.INEFFICIENCY:
        return summarize_if(store).table()
    if what in store:
        return store.get(what)
    known = [choice for choice, _ in ExportSelector.CHOICES] + store.names
    msg = f"unknown export selector '{what}' (known: {', '.join(known)})"
    raise UnknownSelectorError(msg)


def export(store, what: str, fmt: str, directory, mode: str = AggregationMode.VARIANCE) -> Path:
    if fmt not in {choice for choice, _ in ExportFormat.CHOICES}:
        msg = f"unknown export format '{fmt}'"
        raise UnknownSelectorError(msg)
    selected = select(store, what, mode)
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    if fmt == ExportFormat.BINARY:
        path = directory / f"{what}.bin"
        if isinstance(selected, pd.DataFrame):
            selected = selected.select_dtypes("number").to_numpy(dtype=float)
        write_binary(selected, path)
    else:
        path = directory / f"{what}.csv"
        if isinstance(selected, pd.DataFrame):
            selected.to_csv(path, index=what == ExportSelector.PI_MEAN)
        else:
            flat = selected.reshape(selected.shape[0], -1)
            frame = pd.DataFrame(flat, index=pd.Index(store.iterations, name="iteration"))
            frame.to_csv(path)
    logger.info("exported %s of chain %d to %s", what, store.chain, path)
    return path
