"""Kernel selector: compiled extension when available, pure Python otherwise.

Both backends expose encode/decode/insert/word_mul/reduce_raw/kernel_id/
clear_caches with identical semantics (tests assert bit-identical output).
Set HFORMS_FORCE_PY=1 to force the pure-Python kernel.
"""
from __future__ import annotations

import os

if os.environ.get("HFORMS_FORCE_PY"):
    from . import _core_py as backend
else:
    try:
        from . import _core as backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as backend

encode = backend.encode
decode = backend.decode
insert = backend.insert
word_mul = backend.word_mul
reduce_raw = backend.reduce_raw
kernel_id = backend.kernel_id
clear_caches = backend.clear_caches

KIND_Y = 0
KIND_X = 1
