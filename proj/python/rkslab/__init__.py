"""Radial chemotaxis / vanishing-diffusivity numerical laboratory.

Thin wrapper over the compiled core. Campaign runners return the summary as a
parsed dict (the compiled layer hands back JSON text).
"""

import json as _json

from ._rkslab import *  # noqa: F401,F403
from . import _rkslab as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]


def _wrap_campaign(name):
    raw = getattr(_core, name)

    def runner(*args, **kwargs):
        return _json.loads(raw(*args, **kwargs))

    runner.__name__ = name
    runner.__doc__ = raw.__doc__
    return runner


run_sweep = _wrap_campaign("run_sweep")
run_layer = _wrap_campaign("run_layer")
run_mms = _wrap_campaign("run_mms")
run_longtime = _wrap_campaign("run_longtime")
run_roundtrip = _wrap_campaign("run_roundtrip")
run_lemma_batch = _wrap_campaign("run_lemma_batch")
run_single = _wrap_campaign("run_single")
