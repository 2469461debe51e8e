"""Runtime caps and output settings.

Precedence, lowest first: built-in defaults, JSON config file, environment
variables (``LATSIMPLEX_<KEY>``), explicit overrides (command-line flags).
"""
import json
import os
from dataclasses import asdict, dataclass, fields
from typing import Mapping, Optional

from .canonical import DEFAULT_PERM_CAP
from .emptiness import DEFAULT_ORDER_CAP
from .errors import LatticeError
from .search import DEFAULT_ENUMERATION_CAP

ENV_PREFIX = "LATSIMPLEX_"


@dataclass(frozen=True)
class Config:
    order_cap: int = DEFAULT_ORDER_CAP
    perm_cap: int = DEFAULT_PERM_CAP
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    workers: int = os.cpu_count() or 1
    output: str = "text"

    def __post_init__(self):
        for name in ("order_cap", "perm_cap", "enumeration_cap", "workers"):
            if getattr(self, name) <= 0:
                raise LatticeError(f"{name} must be positive")
        if self.output not in ("text", "json"):
            raise LatticeError(f"output must be 'text' or 'json', not {self.output!r}")

    def as_dict(self):
        return asdict(self)


def _coerce(name, value):
    if name == "output":
        return str(value)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise LatticeError(f"config key {name} needs an integer, got {value!r}") from None


def load_config(
    path: Optional[str] = None,
    env: Optional[Mapping[str, str]] = None,
    **overrides,
) -> Config:
    env = os.environ if env is None else env
    keys = {f.name for f in fields(Config)}
    values = {}
    path = path or env.get(ENV_PREFIX + "CONFIG")
    if path:
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise LatticeError(f"bad config file {path}: {exc}") from None
        if not isinstance(data, dict):
            raise LatticeError(f"config file {path} must hold a JSON object")
        unknown = set(data) - keys
        if unknown:
            raise LatticeError(f"unknown config keys: {sorted(unknown)}")
        values.update({k: _coerce(k, v) for k, v in data.items()})
    for k in keys:
        if ENV_PREFIX + k.upper() in env:
            values[k] = _coerce(k, env[ENV_PREFIX + k.upper()])
    values.update({k: _coerce(k, v) for k, v in overrides.items() if v is not None})
    return Config(**values)
