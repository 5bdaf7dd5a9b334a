"""Enumeration budgets.

``COEXPAND_SIZE_GUARD`` overrides the defaults. A bare integer sets the
exhaustive-TU dimension guard; ``tu=10,enum=1000000`` sets both.
"""

import os

from .errors import SizeGuard

DEFAULTS = {
    "tu": 8,  # max min(rows, cols) for exhaustive minor enumeration
    "enum": 200_000,  # max candidates for vertex / lattice / support enumeration
}


def _from_env():
    raw = os.environ.get("COEXPAND_SIZE_GUARD", "").strip()
    if not raw:
        return {}
    if raw.isdigit():
        return {"tu": int(raw)}
    out = {}
    for part in raw.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in DEFAULTS or not value.strip().isdigit():
            raise SizeGuard(f"bad COEXPAND_SIZE_GUARD entry {part!r}")
        out[key] = int(value)
    return out


def limit(name, override=None):
    if override is not None:
        return int(override)
    return _from_env().get(name, DEFAULTS[name])


def check(name, amount, override=None, what="enumeration"):
    cap = limit(name, override)
    if amount > cap:
        raise SizeGuard(f"{what} needs {amount} > guard {cap} ({name}); "
                        "raise COEXPAND_SIZE_GUARD to proceed")
