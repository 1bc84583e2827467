"""Matchings in abelian groups and linear matchings in finite field extensions."""

from . import abelian, acyclic, config, gfield, linmatch, matchcount, permrank, rectify
from .errors import CapExceeded, ClaimFailed, InputError, MatchlabError, SoundnessError

__version__ = "0.1.0"

__all__ = [
    "abelian", "acyclic", "config", "gfield", "linmatch", "matchcount", "permrank",
    "rectify", "CapExceeded", "ClaimFailed", "InputError", "MatchlabError",
    "SoundnessError",
]
