"""Selects the pattern-join kernel at import time.

The compiled extension is preferred when it built; SEMFLOW_PURE=1 forces
the pure-Python fallback (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from semflow.rdf import _bgp_py

join_patterns_py = _bgp_py.join_patterns

try:
    from semflow.rdf._bgp import join_patterns as join_patterns_c  # type: ignore[attr-defined]
except ImportError:  # extension not built
    join_patterns_c = None

USING_COMPILED = join_patterns_c is not None and os.environ.get("SEMFLOW_PURE") != "1"

# compiled kernel caps (falls back beyond them)
MAX_COMPILED_VARS = 64
MAX_COMPILED_PATTERNS = 64
