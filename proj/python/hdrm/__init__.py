"""High-dimensional repeated measure tests.

Thin wrapper around the C++ core. The two entry points mirror the underlying
library: ``hdrm_single`` for one group and ``hdrm_grouped`` for several
groups, both returning a ``TestResult``.
"""

from ._hdrm import (
    TestResult,
    chisq_cdf,
    chisq_quantile,
    hdrm_grouped,
    hdrm_single,
    oracle,
    pearson_pvalue,
    pearson_quantile,
    sample_dataset,
)

__all__ = [
    "TestResult",
    "chisq_cdf",
    "chisq_quantile",
    "hdrm_grouped",
    "hdrm_single",
    "oracle",
    "pearson_pvalue",
    "pearson_quantile",
    "sample_dataset",
]

__version__ = "0.1.0"
