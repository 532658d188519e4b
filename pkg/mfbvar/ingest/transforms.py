"""
file: mfbvar/ingest/transforms.py
The seven standard stationarity transforms of monthly macro panels.
"""
import numpy as np
import pandas as pd

from mfbvar.ingest.constants import TransformCode
from mfbvar.ingest.exceptions import IngestValidationError
from mfbvar.varmodel.constants import DEFAULT_QUARTER_PHASE


def apply_transform(series: pd.Series, code: int) -> pd.Series:
    """
    Transform one series; leading values lost to differencing become NaN.
    Quarterly series should be passed on their quarter-end grid so
    differences are taken quarter on quarter.
    """
    code = int(code)
    values = series.astype(float)
    if code in TransformCode.LOGARITHMIC:
        if (values.dropna() <= 0).any():
            msg = f"series '{series.name}' has non-positive values and cannot take transform {code}"
            raise IngestValidationError(msg)
        values = np.log(values)

    if code in (TransformCode.LEVEL, TransformCode.LOG):
        return values
    if code in (TransformCode.DIFF, TransformCode.LOG_DIFF):
        return values.diff()
    if code in (TransformCode.DIFF2, TransformCode.LOG_DIFF2):
        return values.diff().diff()
    if code == TransformCode.PCT_CHANGE_DIFF:
        return (values / values.shift() - 1.0).diff()
    msg = f"unknown transform code {code} for series '{series.name}'"
    raise IngestValidationError(msg)


def transform_frame(
    frame: pd.DataFrame, codes: dict[str, int], quarterly: set[str], quarter_phase: int = DEFAULT_QUARTER_PHASE,
) -> pd.DataFrame:
    """
    Quarterly series are transformed on the quarter-end rows, so a missing
    quarter leaves NaN rather than a difference across the gap.
    """
    quarter_ends = frame.index[np.arange(len(frame)) % 3 == quarter_phase]
    transformed = {}
    for column in frame.columns:
        if column in quarterly:
            on_grid = frame[column].loc[quarter_ends]
            transformed[column] = apply_transform(on_grid, codes[column]).reindex(frame.index)
        else:
            transformed[column] = apply_transform(frame[column], codes[column])
    return pd.DataFrame(transformed, index=frame.index)
