"""Size caps.

Defaults can be overridden globally through the ``RELMAX_CAPS`` environment
variable (``"lattice=5000,iso=3000"``) or locally with :func:`override_caps`.
"""
from __future__ import annotations

import contextlib
import dataclasses
import os

from .errors import CapExceeded, UsageError


@dataclasses.dataclass
class Caps:
    order: int = 10**6          # order computation (Schreier-Sims)
    elements: int = 10**5       # element-list materialization
    table: int = 5000           # Cayley table materialization
    degree: int = 10**4
    lattice: int = 2000
    lattice_hard: int = 5 * 10**4
    iso: int = 2000

    def check(self, name: str, value: int, what: str = "") -> None:
        limit = getattr(self, name)
        if value > limit:
            raise CapExceeded(f"{name} cap {limit} exceeded by {what or value}")


def _parse_overrides(text: str) -> dict[str, int]:
    out = {}
    fields = {f.name for f in dataclasses.fields(Caps)}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or key not in fields:
            raise UsageError(f"bad cap override {item!r}")
        out[key] = int(float(val))
    return out


CAPS = Caps(**_parse_overrides(os.environ.get("RELMAX_CAPS", "")))


def set_caps(**kw: int) -> None:
    for key, val in kw.items():
        if not hasattr(CAPS, key):
            raise UsageError(f"unknown cap {key!r}")
        setattr(CAPS, key, int(val))


@contextlib.contextmanager
def override_caps(**kw: int):
    saved = dataclasses.asdict(CAPS)
    set_caps(**kw)
    try:
        yield CAPS
    finally:
        set_caps(**saved)


def parse_cap_overrides(text: str) -> dict[str, int]:
    return _parse_overrides(text)
