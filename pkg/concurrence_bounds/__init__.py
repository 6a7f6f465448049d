"""Concurrence Bounds - lower and upper bounds on multipartite concurrence."""

__version__ = '0.1.0'

from concurrence_bounds.bounds import report  # noqa: E402
from concurrence_bounds.config import Config, load_config  # noqa: E402
from concurrence_bounds.qstate import dct_state, ghz, validate, white_noise_mix  # noqa: E402

__all__ = [
    '__version__', 'Config', 'dct_state', 'ghz', 'load_config', 'report',
    'validate', 'white_noise_mix',
]
