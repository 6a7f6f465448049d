"""Tolerance record, configuration dataclasses and YAML/JSON config I/O."""

from dataclasses import dataclass, field, asdict, fields, replace
from math import isfinite
from pathlib import Path
from typing import Optional, get_type_hints

import orjson
import yaml

from concurrence_bounds.errors import ConfigError


def parse_yaml(content: str) -> dict:
    """Parse YAML content into a dict using PyYAML."""
    result = yaml.safe_load(content)
    return result if isinstance(result, dict) else {}


# =============================================================================
# Config Dataclasses
# =============================================================================

@dataclass(frozen=True)
class Tolerances:
    """Every numerical threshold used by the package, in one place."""
    hermitian: float = 1e-8       # ||h - h^dag||_F relative to max(1, ||h||_F)
    trace: float = 1e-8           # |Tr rho - 1|
    positivity: float = 1e-8      # smallest eigenvalue allowed is -positivity
    pure_norm: float = 1e-10      # | ||psi|| - 1 |
    weight_norm: float = 1e-10    # DCT weight normalization
    jacobi_offdiag: float = 1e-12  # off-diagonal stop, relative to ||h||_F
    jacobi_max_sweeps: int = 100
    gram_clamp: float = 1e-12     # Gram eigenvalues above -gram_clamp clamp to 0
    eig_cutoff: float = 1e-12     # spectral upper bound skips smaller weights
    noise_floor: float = 1e-12    # purity radicands below this, relative to their terms, are 0
    bound_floor: float = 1e-8     # best cut bound at or below this is reported as 0
    verdict: float = 1e-9         # best lower bound above this => entangled

    def with_validation(self, tol: float) -> 'Tolerances':
        """Return a copy with the three state-validation tolerances set to tol."""
        return replace(self, hermitian=tol, trace=tol, positivity=tol)


DEFAULT_TOLERANCES = Tolerances()


@dataclass
class ScanConfig:
    """Noise sweep and threshold search options."""
    workers: int = 1
    monotonic_grid: int = 20
    threshold_accuracy: float = 1e-4
    digits: int = 12


@dataclass
class LogConfig:
    """Logging options."""
    level: str = 'WARNING'
    file: Optional[str] = None


def _coerce(where: str, kind, value):
    """Convert one raw config value to ``kind`` (float, int, str or Optional[str])."""
    if kind in (float, int):
        # PyYAML reads exponent-only floats such as 1e-9 as strings
        if isinstance(value, bool):
            raise ConfigError(f'{where}: expected a number, got {value!r}')
        try:
            number = float(value)
        except (TypeError, ValueError):
            raise ConfigError(f'{where}: expected a number, got {value!r}') from None
        if not isfinite(number):
            raise ConfigError(f'{where}: must be finite, got {value!r}')
        if kind is int:
            if not number.is_integer():
                raise ConfigError(f'{where}: expected an integer, got {value!r}')
            return int(number)
        return number
    if value is None and kind == Optional[str]:
        return None
    if isinstance(value, str):
        return value
    raise ConfigError(f'{where}: expected a string, got {value!r}')


@dataclass
class Config:
    """Top-level configuration."""
    tolerances: Tolerances = field(default_factory=Tolerances)
    scan: ScanConfig = field(default_factory=ScanConfig)
    logging: LogConfig = field(default_factory=LogConfig)

    # Map of section name -> dataclass type for from_dict
    SECTION_TYPES = {
        'tolerances': Tolerances,
        'scan': ScanConfig,
        'logging': LogConfig,
    }

    @classmethod
    def from_dict(cls, data: dict) -> 'Config':
        """Build a Config from a nested dict of raw YAML/JSON values.

        Values are converted to their field types; unknown keys are
        ignored and missing keys keep defaults.

        Raises:
            ConfigError: a value cannot be read as its field type.
        """
        kwargs = {}
        for section, values in data.items():
            section_cls = cls.SECTION_TYPES.get(section)
            if section_cls is None or not isinstance(values, dict):
                continue
            hints = get_type_hints(section_cls)
            kwargs[section] = section_cls(**{
                f.name: _coerce(f'{section}.{f.name}', hints[f.name], values[f.name])
                for f in fields(section_cls) if f.name in values
            })
        return cls(**kwargs)

    def to_dict(self) -> dict:
        """Serialize to a nested dict."""
        return asdict(self)


# =============================================================================
# File I/O
# =============================================================================

def load_config(path: Path) -> Config:
    """Load a Config from a YAML or JSON file.

    Returns a default Config if the file is missing or cannot be parsed.

    Raises:
        ConfigError: the file parses but a value has the wrong type.
    """
    path = Path(path)
    if not path.exists():
        return Config()

    try:
        text = path.read_text(encoding='utf-8')
    except OSError:
        return Config()

    try:
        if path.suffix.lower() == '.json':
            data = orjson.loads(text)
        else:
            data = parse_yaml(text)
    except (orjson.JSONDecodeError, yaml.YAMLError):
        return Config()

    if not isinstance(data, dict):
        return Config()

    return Config.from_dict(data)


def save_config(config: Config, path: Path) -> None:
    """Save a Config to a YAML file."""
    Path(path).write_text(dump_config(config), encoding='utf-8')


def dump_config(config: Config) -> str:
    """Render a Config as commented YAML."""
    content = '# concurrence-bounds configuration\n\n'
    content += yaml.dump(config.to_dict(), default_flow_style=False,
                         sort_keys=False, allow_unicode=True)
    return content
