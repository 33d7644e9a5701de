"""Kernel backend selection.

The compiled extension is preferred when it importable; the numpy reference
backend is the fallback.  Set HYPERBELL_BACKEND=pure or =compiled to force a
lane (the benchmark script uses this; =compiled raises if the extension is
missing rather than silently degrading).
"""

import os

from . import pure

_forced = os.environ.get("HYPERBELL_BACKEND", "").strip().lower()

if _forced == "pure":
    backend = pure
elif _forced == "compiled":
    from . import _core as backend
else:
    try:
        from . import _core as backend
    except ImportError:
        backend = pure

BACKEND_NAME = backend.NAME

apply_single_qubit = backend.apply_single_qubit
phase_flip = backend.phase_flip
apply_controlled_x = backend.apply_controlled_x
mermin_pair = backend.mermin_pair
mermin_objective = backend.mermin_objective
