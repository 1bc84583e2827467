"""Size caps for exhaustive computations.

Every exhaustive routine refuses inputs above its cap instead of
approximating.  Caps can be changed globally, for a block of code via
:func:`override`, or from a JSON file named by ``MATCHLAB_CONFIG``.
"""

from __future__ import annotations

import contextlib
import dataclasses
import json
import os


@dataclasses.dataclass
class Caps:
    enum: int = 12  # k for matching enumeration
    perm: int = 24  # k for exact permanents
    field: int = 2**20  # p**(m*n) for field towers
    subspace_enum: int = 2**16  # elements enumerated in a subspace
    criterion: int = 12  # basis length for the 2**k dimension criterion
    gl_enum: int = 2**16  # matrices enumerated for GL(A) sweeps
    group_order: int = 2**31
    exhaustive_perm_switch: int = 5  # permrank pair sweeps sample from this k on


CAPS = Caps()


def load(path=None):
    """Update :data:`CAPS` from a JSON object ``{"enum": 10, ...}``."""
    path = path or os.environ.get("MATCHLAB_CONFIG")
    if not path:
        return CAPS
    with open(path) as fh:
        data = json.load(fh)
    for key, value in data.items():
        if not hasattr(CAPS, key):
            raise KeyError(f"unknown cap {key!r}")
        setattr(CAPS, key, int(value))
    return CAPS


@contextlib.contextmanager
def override(**caps):
    old = dataclasses.asdict(CAPS)
    try:
        for key, value in caps.items():
            if value is None:
                continue
            if not hasattr(CAPS, key):
                raise KeyError(f"unknown cap {key!r}")
            setattr(CAPS, key, int(value))
        yield CAPS
    finally:
        for key, value in old.items():
            setattr(CAPS, key, value)
