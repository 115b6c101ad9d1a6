"""Arithmetic backend selection.

Prefers the compiled kernel (``_speedups``) when it has been built, falling
back to the pure-Python twin.  Set ``ACDOL_PURE=1`` to force the fallback,
e.g. to compare against the compiled kernel (see ``benchmarks/``).
"""

import os

if os.environ.get("ACDOL_PURE") == "1":
    from . import _kernel_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND_NAME
Scalar = _impl.Scalar
ZERO = _impl.ZERO
ONE = _impl.ONE
I = _impl.I
rref = _impl.rref
matmul = _impl.matmul


def from_rational(re, im=0):
    """Scalar from Fraction/int real and imaginary parts."""
    return Scalar.from_rational(re, im)
