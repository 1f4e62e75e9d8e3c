"""Exception types shared across the pipeline.

The CLI maps these onto stable exit codes: ConfigError -> 1, DataError -> 2.
"""


class ConfigError(Exception):
    """Invalid configuration or usage (bad parameter values, bad plans)."""


class DataError(Exception):
    """Invalid or unreadable input data (files, tokens, matrices)."""
