"""Numeric kernels with a compiled core and a pure-Python fallback.

The compiled extension (``_ckernels``, built from Cython) is preferred when
importable; otherwise the pure twin is used. Set ``VALUERANK_PURE_PYTHON=1``
to force the fallback, e.g. for benchmarking the two against each other.
Both produce bit-identical results.
"""

from __future__ import annotations

import os

IMPLEMENTATION = "pure"

if not os.environ.get("VALUERANK_PURE_PYTHON"):
    try:
        from valuerank.kernels._ckernels import (  # type: ignore[import-not-found]
            plain_dcg,
            tie_averaged_dcg,
            weighted_sums,
        )

        IMPLEMENTATION = "compiled"
    except ImportError:
        pass

if IMPLEMENTATION == "pure":
    from valuerank.kernels._pykernels import (  # noqa: F401
        plain_dcg,
        tie_averaged_dcg,
        weighted_sums,
    )

__all__ = ["IMPLEMENTATION", "weighted_sums", "tie_averaged_dcg", "plain_dcg"]
