"""Kernel backend selection.

Imports the compiled extension when available (and unless the
QUADCLASS_PURE environment variable is set), otherwise falls back to the
pure-python twin.  Both expose the same functions with identical
semantics; ``BACKEND`` tells which one is active.
"""

import os

from . import _kernels_py

if os.environ.get("QUADCLASS_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND

jacobi = _impl.jacobi
kronecker_small = _impl.kronecker
kronecker_table = _impl.kronecker_table
jacobsthal_sum = _impl.jacobsthal_sum
jacobsthal_scan = _impl.jacobsthal_scan
f_symbol_period = _impl.f_symbol_period
complete_sum_direct = _impl.complete_sum_direct
logsine_value = _impl.logsine_value
exp1 = _impl.exp1
smoothed_value = _impl.smoothed_value
euler_product = _impl.euler_product
prime_tail_sum = _impl.prime_tail_sum
euler_and_tail = _impl.euler_and_tail
census_scan = _impl.census_scan
pell_census_count = _impl.pell_census_count
pell_census_count_masked = _impl.pell_census_count_masked

# the compiled kernels use 64-bit integers; stay well clear of the edge
I64_SAFE = 2**62


def kronecker(d, m):
    """Kronecker symbol (d/m), dispatching big operands to pure python."""
    if -I64_SAFE < d < I64_SAFE and m < I64_SAFE:
        return kronecker_small(d, m)
    return _kernels_py.kronecker(d, m)
