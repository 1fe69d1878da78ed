"""Desk-scale bounds shared by the enumerating operations.

Every enumeration in the package refuses to run past a configured size and
raises :class:`BoundExceeded` instead.  The ``UNISPEC_MAX_CELLS`` environment
variable, when set to a positive integer, replaces every diagram-size bound
(partitions, tableaux, distributions) with that value.
"""

import os


class BoundExceeded(ValueError):
    """An input is larger than the configured desk-scale bound."""


PARTITION_BOUND = 40
TABLEAU_BOUND = 14
GL_DIST_BOUND = 30
HL_VARIABLE_BOUND = 8


def _override():
    raw = os.environ.get("UNISPEC_MAX_CELLS")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"UNISPEC_MAX_CELLS must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError("UNISPEC_MAX_CELLS must be positive")
    return value


def cells_bound(default: int) -> int:
    """Return the active bound for a diagram-size limit whose default is `default`."""
    override = _override()
    return default if override is None else override


def check(value: int, bound: int, what: str) -> None:
    if value > bound:
        raise BoundExceeded(f"{what} = {value} exceeds bound {bound}")
