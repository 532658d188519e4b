# mfbvar/ingest/constants.py

DATE_COLUMN = "date"
META_COLUMNS = ("series_id", "frequency", "transform", "delay_months", "delay_day")

MAX_MONTHLY_DELAY = 2
# quarterly series are dated at the quarter-end month
MAX_QUARTERLY_DELAY = 3
MAX_DELAY_DAY = 31

# the first quarter-end that can be aggregated from five observed months
FIRST_AGGREGABLE_PERIOD = 4

# written by write_dataset so a re-read needs no further masking
PUBLISHED_DELAY = (0, 1)


class TransformCode:
    """Stationarity transforms applied to raw series before standardization"""
    LEVEL = 1
    DIFF = 2
    DIFF2 = 3
    LOG = 4
    LOG_DIFF = 5
    LOG_DIFF2 = 6
    PCT_CHANGE_DIFF = 7

    CHOICES = (
        (LEVEL, "No transformation"),
        (DIFF, "First difference"),
        (DIFF2, "Second difference"),
        (LOG, "Log"),
        (LOG_DIFF, "First difference of log"),
        (LOG_DIFF2, "Second difference of log"),
        (PCT_CHANGE_DIFF, "First difference of the percent change"),
    )
    LOGARITHMIC = (LOG, LOG_DIFF, LOG_DIFF2)
