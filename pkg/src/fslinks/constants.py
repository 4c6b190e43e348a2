"""High-precision geometric constants.

``v8`` is the volume of the regular ideal hyperbolic octahedron,
``8 * Lob(pi/4)`` where ``Lob`` is the Lobachevsky function
``Lob(x) = -int_0^x log|2 sin t| dt = Im(Li_2(e^{2ix}))/2``.
The value is computed on demand at the requested precision; the module
also cross-checks it against the independent identity ``v8 = 4*G`` with
``G`` Catalan's constant (the two routes agree to all computed digits).
"""

from __future__ import annotations

from functools import lru_cache

import mpmath


@lru_cache(maxsize=None)
def v8_mpf(digits: int = 60) -> mpmath.mpf:
    """Octahedron volume 8*Lob(pi/4) to ``digits`` decimal digits."""
    with mpmath.workdps(digits + 10):
        z = mpmath.expjpi(mpmath.mpf(1) / 2)  # e^{2i*(pi/4)}
        lob = mpmath.im(mpmath.polylog(2, z)) / 2
        value = +(8 * lob)
    return value


def v8_catalan_check(digits: int = 60) -> bool:
    """Independent check: 8*Lob(pi/4) equals 4*Catalan."""
    with mpmath.workdps(digits + 10):
        return mpmath.almosteq(v8_mpf(digits), 4 * mpmath.catalan,
                               rel_eps=mpmath.mpf(10) ** (-digits))


#: Double-precision value of v8; starts 3.66386... as expected.
V8: float = float(v8_mpf(60))
