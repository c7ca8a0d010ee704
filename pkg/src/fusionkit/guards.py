"""Size guards for factorial- and exponential-size computations.

Defaults can be overridden with the ``FUSIONKIT_GUARDS`` environment
variable, a JSON object such as ``{"ambient_dim": 6561}``.
"""

from __future__ import annotations

import json
import os
from contextlib import contextmanager

DEFAULT_GUARDS: dict[str, int] = {
    # box count for the fusion element F_omega
    "fusion_n": 7,
    # n + n' for symbolic pair functions in the group ring
    "pair_n": 6,
    # degree of the regular representation used by divisibility tests
    "divisibility_n": 6,
    # N^(n+n') for matrix-level Yangian computations
    "ambient_dim": 1024,
    # dim W for the Burnside oracle
    "burnside_dim": 12,
}

_overrides: dict[str, int] = {}


class GuardExceeded(RuntimeError):
    """A requested computation is larger than the configured guard."""

    def __init__(self, name: str, value: int, limit: int, what: str = ""):
        self.name, self.value, self.limit = name, value, limit
        label = f" ({what})" if what else ""
        super().__init__(f"size guard {name}={limit} exceeded by {value}{label}")


def current_guards() -> dict[str, int]:
    g = dict(DEFAULT_GUARDS)
    env = os.environ.get("FUSIONKIT_GUARDS")
    if env:
        try:
            data = json.loads(env)
        except json.JSONDecodeError as e:
            raise ValueError(f"FUSIONKIT_GUARDS is not valid JSON: {e}") from None
        if not isinstance(data, dict):
            raise ValueError("FUSIONKIT_GUARDS must be a JSON object")
        for k, v in data.items():
            if k not in DEFAULT_GUARDS:
                raise ValueError(f"unknown guard {k!r}")
            g[k] = int(v)
    g.update(_overrides)
    return g


def check_guard(name: str, value: int, what: str = "") -> None:
    limit = current_guards()[name]
    if value > limit:
        raise GuardExceeded(name, value, limit, what)


@contextmanager
def guard_overrides(**kwargs: int):
    """Temporarily raise (or lower) guards in-process."""
    saved = dict(_overrides)
    for k, v in kwargs.items():
        if k not in DEFAULT_GUARDS:
            raise ValueError(f"unknown guard {k!r}")
        _overrides[k] = int(v)
    try:
        yield
    finally:
        _overrides.clear()
        _overrides.update(saved)
