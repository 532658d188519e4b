"""
file: mfbvar/ingest/readers.py
Reads a monthly panel and its series metadata into a MixedFrequencyDataset.

Data file: delimited text, header row of series ids, one row per month. An
optional leading ``date`` column places the rows on the calendar; without it
the configured quarter phase decides which rows are quarter-ends.

Metadata file: one row per series with columns series_id, frequency,
transform, delay_months, delay_day. A value for month m is published on day
``delay_day`` of month m + ``delay_months`` and is visible to an as-of date on
or after that day.
"""
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from mfbvar.ingest.constants import DATE_COLUMN
from mfbvar.ingest.constants import FIRST_AGGREGABLE_PERIOD
from mfbvar.ingest.constants import MAX_DELAY_DAY
from mfbvar.ingest.constants import MAX_MONTHLY_DELAY
from mfbvar.ingest.constants import MAX_QUARTERLY_DELAY
from mfbvar.ingest.constants import META_COLUMNS
from mfbvar.ingest.constants import PUBLISHED_DELAY
from mfbvar.ingest.constants import TransformCode
from mfbvar.ingest.exceptions import IngestValidationError
from mfbvar.ingest.transforms import transform_frame
from mfbvar.varmodel.constants import DEFAULT_QUARTER_PHASE
from mfbvar.varmodel.constants import SeriesFrequency
from mfbvar.varmodel.exceptions import DatasetValidationError
from mfbvar.varmodel.structures import MixedFrequencyDataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesMeta:
    series_id: str
    frequency: str = SeriesFrequency.MONTHLY
    transform: int = TransformCode.LEVEL
    delay_months: int = PUBLISHED_DELAY[0]
    delay_day: int = PUBLISHED_DELAY[1]

    def __post_init__(self):
        if self.frequency not in {choice for choice, _ in SeriesFrequency.CHOICES}:
            msg = f"series '{self.series_id}': unknown frequency '{self.frequency}'"
            raise IngestValidationError(msg)
        if self.transform not in {choice for choice, _ in TransformCode.CHOICES}:
            msg = f"series '{self.series_id}': unknown transform code {self.transform}"
            raise IngestValidationError(msg)
        max_delay = MAX_QUARTERLY_DELAY if self.is_quarterly else MAX_MONTHLY_DELAY
        if not 0 <= self.delay_months <= max_delay:
            msg = f"series '{self.series_id}': delay of {self.delay_months} months outside [0, {max_delay}]"
            raise IngestValidationError(msg)
        if not 1 <= self.delay_day <= MAX_DELAY_DAY:
            msg = f"series '{self.series_id}': publication day {self.delay_day} outside [1, {MAX_DELAY_DAY}]"
            raise IngestValidationError(msg)

    @property
    def is_quarterly(self) -> bool:
        return self.frequency == SeriesFrequency.QUARTERLY

    def release_date(self, month: pd.Period) -> pd.Timestamp:
        release = month + self.delay_months
        day = min(self.delay_day, release.days_in_month)
        return release.start_time + pd.Timedelta(days=day - 1)


def read_metadata(path) -> dict[str, SeriesMeta]:
    try:
        frame = pd.read_csv(path, dtype={"series_id": str})
    except (OSError, ValueError) as exc:
        msg = f"cannot read series metadata {path}: {exc}"
        raise IngestValidationError(msg) from exc
    missing = [column for column in META_COLUMNS[:2] if column not in frame.columns]
    if missing:
        msg = f"metadata {path} lacks columns: {', '.join(missing)}"
        raise IngestValidationError(msg)
    metas = {}
    for row in frame.to_dict("records"):
        kwargs = {"series_id": str(row["series_id"]).strip(), "frequency": str(row["frequency"]).strip().lower()}
        for column in META_COLUMNS[2:]:
            if column in row and not pd.isna(row[column]):
                kwargs[column] = int(row[column])
        meta = SeriesMeta(**kwargs)
        if meta.series_id in metas:
            msg = f"series '{meta.series_id}' is described twice in {path}"
            raise IngestValidationError(msg)
        metas[meta.series_id] = meta
    return metas


def read_panel(path) -> pd.DataFrame:
    """The raw panel, indexed by monthly periods when a date column is present."""
    try:
        frame = pd.read_csv(path)
    except (OSError, ValueError) as exc:
        msg = f"cannot read data file {path}: {exc}"
        raise IngestValidationError(msg) from exc
    frame.columns = [str(column).strip() for column in frame.columns]
    if DATE_COLUMN not in frame.columns:
        return _numeric(frame, path)

    try:
        months = pd.DatetimeIndex(pd.to_datetime(frame.pop(DATE_COLUMN))).to_period("M")
    except (ValueError, TypeError) as exc:
        msg = f"unreadable dates in {path}: {exc}"
        raise IngestValidationError(msg) from exc
    steps = np.diff(months.asi8)
    if np.any(steps <= 0):
        bad = int(np.argmax(steps <= 0)) + 1
        msg = f"dates in {path} are not increasing at row {bad} ({months[bad]})"
        raise IngestValidationError(msg)
    if np.any(steps != 1):
        bad = int(np.argmax(steps != 1)) + 1
        msg = f"dates in {path} skip months before row {bad} ({months[bad]}); one row per month is required"
        raise IngestValidationError(msg)
    frame.index = months
    return _numeric(frame, path)


def _numeric(frame: pd.DataFrame, path) -> pd.DataFrame:
    try:
        return frame.astype(float)
    except ValueError as exc:
        msg = f"non-numeric values in {path}: {exc}"
        raise IngestValidationError(msg) from exc


def quarter_phase_of(months: pd.PeriodIndex) -> int:
    """Row offset of the first March, June, September or December."""
    return (-months[0].month) % 3


def publication_mask(months: pd.PeriodIndex, metas: list[SeriesMeta], as_of) -> np.ndarray:
    """True where a value has been published by ``as_of``."""
    as_of = pd.Timestamp(as_of)
    visible = np.ones((len(months), len(metas)), dtype=bool)
    for j, meta in enumerate(metas):
        releases = pd.DatetimeIndex([meta.release_date(month) for month in months])
        visible[:, j] = releases <= as_of
    return visible


def _standardize(values: np.ndarray, n_monthly: int, series_ids) -> tuple[np.ndarray, np.ndarray]:
    """Means and standard deviations over the balanced interior."""
    observed = ~np.isnan(values)
    complete = np.flatnonzero(np.all(observed[:, :n_monthly], axis=1))
    balanced_end = int(complete[-1]) if complete.size else -1
    interior = values[: balanced_end + 1]
    counts = np.sum(~np.isnan(interior), axis=0)
    short = [sid for sid, count in zip(series_ids, counts) if count < 2]
    if short:
        msg = f"too few observations in the balanced interior to standardize: {', '.join(short)}"
        raise IngestValidationError(msg)
    means = np.nanmean(interior, axis=0)
    scales = np.nanstd(interior, axis=0)
    constant = [sid for sid, scale in zip(series_ids, scales) if scale <= 0]
    if constant:
        msg = f"constant series cannot be standardized: {', '.join(constant)}"
        raise IngestValidationError(msg)
    return means, scales


def ingest(data, meta, as_of=None, quarter_phase: int = DEFAULT_QUARTER_PHASE) -> MixedFrequencyDataset:
    """
    Read, mask, transform and standardize a mixed-frequency panel.

    Steps: publication delays relative to ``as_of`` hide the ragged edge;
    each series takes its transform code (quarterly series quarter on
    quarter); leading rows without a complete monthly cross-section are
    dropped; quarterly values before the first aggregable quarter-end are
    masked; every series is standardized on the balanced interior.
    """
    panel = read_panel(data)
    metas = read_metadata(meta)
    unknown = [column for column in panel.columns if column not in metas]
    if unknown:
        msg = f"no metadata for series: {', '.join(unknown)}"
        raise IngestValidationError(msg)
    unused = [series_id for series_id in metas if series_id not in panel.columns]
    if unused:
        logger.warning("metadata describes series absent from the data: %s", ", ".join(unused))

    ordered = (
        [column for column in panel.columns if not metas[column].is_quarterly]
        + [column for column in panel.columns if metas[column].is_quarterly]
    )
    panel = panel[ordered]
    series_metas = [metas[column] for column in ordered]
    quarterly = {column for column in ordered if metas[column].is_quarterly}
    n_monthly = len(ordered) - len(quarterly)

    dated = isinstance(panel.index, pd.PeriodIndex)
    if dated:
        phase = quarter_phase_of(panel.index)
        if phase != quarter_phase:
            logger.debug("dates put quarter-ends at phase %d (configured %d)", phase, quarter_phase)
    else:
        phase = quarter_phase
    off_quarter = np.arange(len(panel)) % 3 != phase
    for column in quarterly:
        bad = panel[column].notna().to_numpy() & off_quarter
        if bad.any():
            row = int(np.argmax(bad))
            msg = f"quarterly series '{column}' has a value on non-quarter-end row {row} ({panel.index[row]})"
            raise IngestValidationError(msg)

    masked = 0
    if as_of is not None:
        if not dated:
            msg = "an as-of date needs a date column in the data file"
            raise IngestValidationError(msg)
        try:
            visible = publication_mask(panel.index, series_metas, as_of)
        except ValueError as exc:
            msg = f"unreadable as-of date '{as_of}'"
            raise IngestValidationError(msg) from exc
        hidden = panel.notna().to_numpy() & ~visible
        masked = int(hidden.sum())
        panel = panel.mask(hidden)

    panel = transform_frame(panel, {m.series_id: m.transform for m in series_metas}, quarterly, phase)

    complete = panel.iloc[:, :n_monthly].notna().all(axis=1).to_numpy()
    if not complete.any():
        msg = "no period has every monthly series observed"
        raise IngestValidationError(msg)
    first = int(np.argmax(complete))
    if first:
        logger.info("dropping %d leading periods without a complete monthly cross-section", first)
        panel = panel.iloc[first:]
        phase = (phase - first) % 3

    values = panel.to_numpy(dtype=float)
    early = (np.arange(len(values)) < FIRST_AGGREGABLE_PERIOD)[:, None] & ~np.isnan(values)
    early[:, :n_monthly] = False
    if early.any():
        logger.warning(
            "masking %d quarterly values before period %d; they cannot be aggregated",
            int(early.sum()), FIRST_AGGREGABLE_PERIOD,
        )
        values[early] = np.nan

    means, scales = _standardize(values, n_monthly, ordered)
    periods = tuple(str(label) for label in panel.index) if dated else ()
    try:
        dataset = MixedFrequencyDataset(
            values=(values - means) / scales,
            n_monthly=n_monthly,
            series_ids=tuple(ordered),
            quarter_phase=phase,
            means=means,
            scales=scales,
            periods=periods,
        )
    except DatasetValidationError as exc:
        raise IngestValidationError(str(exc)) from exc
    logger.info(
        "ingested %d series (%d monthly) over T=%d periods, balanced to T_b=%d, %d cells masked by publication",
        dataset.n_vars, n_monthly, dataset.n_periods, dataset.balanced_end + 1, masked,
    )
    return dataset


def write_dataset(dataset: MixedFrequencyDataset, data_path, meta_path) -> tuple[Path, Path]:
    """
    Write the destandardized, already transformed panel so that ingesting
    the two files again yields the same dataset.
    """
    frame = pd.DataFrame(dataset.destandardize(dataset.values), columns=list(dataset.series_ids))
    if dataset.periods:
        frame.insert(0, DATE_COLUMN, [pd.Period(label, freq="M").start_time.date() for label in dataset.periods])
    frame.to_csv(data_path, index=False, float_format="%.17g")

    meta = pd.DataFrame({
        "series_id": list(dataset.series_ids),
        "frequency": [
            SeriesFrequency.MONTHLY if j < dataset.n_monthly else SeriesFrequency.QUARTERLY
            for j in range(dataset.n_vars)
        ],
        "transform": TransformCode.LEVEL,
        "delay_months": PUBLISHED_DELAY[0],
        "delay_day": PUBLISHED_DELAY[1],
    })
    meta.to_csv(meta_path, index=False)
    logger.info("wrote %d x %d panel to %s", dataset.n_periods, dataset.n_vars, data_path)
    return Path(data_path), Path(meta_path)
