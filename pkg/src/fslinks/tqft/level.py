"""Arithmetic at an odd level: quantum integers, recoupling coefficients.

Conventions (the single normative statement for the whole TQFT engine and
its oracle; see also docs/conventions.md):

* ``q = exp(2*pi*i/r)`` with r odd, r >= 3, and the Kauffman variable is
  fixed by ``A^2 = q``, i.e. ``A = exp(pi*i/r)``;
* ``[n] = sin(2*pi*n/r) / sin(2*pi/r)``, a real number;
* loop value ``delta = -A^2 - A^(-2)``, colored unknot ``(-1)^a [a+1]``;
* colors are the even integers ``0, 2, ..., r-3``; a triple is admissible
  iff its sum is even, it satisfies the triangle inequality, and the sum
  is at most ``2(r-2)``;
* positive-crossing half twist on colors (a, b) in channel t:
  ``lam(a,b,t) = (-1)^((a+b-t)/2) * A^((a(a+2)+b(b+2)-t(t+2))/2)``.

All values are gmpy2 floats/complexes at the level's precision; tables are
cached per (r, precision).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import gmpy2

from fslinks.errors import DomainError


@dataclass(frozen=True)
class Level:
    """Odd level r with its root of unity and working precision."""

    r: int
    precision_bits: int = 128

    def __post_init__(self):
        if self.r < 3 or self.r % 2 == 0:
            raise DomainError(f"level must be odd and >= 3, got {self.r}")
        if self.precision_bits < 53:
            raise DomainError("precision must be at least 53 bits")

    def context(self):
        return gmpy2.context(precision=self.precision_bits)

    def tables(self) -> "LevelTables":
        return _tables(self.r, self.precision_bits)


def colors(r: int) -> tuple[int, ...]:
    """The color set: nonnegative even integers below r-2."""
    return tuple(range(0, r - 2, 2))


def admissible(a: int, b: int, c: int, r: int) -> bool:
    """Parity, triangle, and level-bound conditions at a fusion vertex."""
    if (a + b + c) % 2 != 0:
        return False
    if not (abs(a - b) <= c <= a + b):
        return False
    return a + b + c <= 2 * (r - 2)


class LevelTables:
    """Cached arithmetic for one (r, precision) pair.

    Precision 53 selects plain machine floats/complexes (the fast path
    used by the skein oracle's heavy sweeps); anything higher uses gmpy2.
    """

    def __init__(self, r: int, bits: int):
        self.r = r
        self.bits = bits
        self.ctx = gmpy2.context(precision=max(bits, 54))
        self.float_mode = bits <= 53
        if self.float_mode:
            import math

            self._pi_over_r = math.pi / r
            s1 = math.sin(2 * self._pi_over_r)
            self.qint = [math.sin(2 * n * self._pi_over_r) / s1
                         for n in range(2 * self.r + 2)]
            self.qfact = [1.0] * (2 * self.r + 2)
            for n in range(1, 2 * self.r + 2):
                self.qfact[n] = self.qfact[n - 1] * self.qint[n]
            self.delta_loop = -2 * math.cos(2 * self._pi_over_r)
            self.one = 1.0
        else:
            with gmpy2.context(self.ctx):
                pi = gmpy2.const_pi()
                self._pi_over_r = pi / r
                # [n] for 0 <= n <= 2r (more than any admissible sum needs)
                s1 = gmpy2.sin(2 * self._pi_over_r)
                self.qint = [gmpy2.mpfr(0)] * (2 * self.r + 2)
                for n in range(2 * self.r + 2):
                    self.qint[n] = gmpy2.sin(2 * n * self._pi_over_r) / s1
                self.qfact = [gmpy2.mpfr(1)] * (2 * self.r + 2)
                for n in range(1, 2 * self.r + 2):
                    self.qfact[n] = self.qfact[n - 1] * self.qint[n]
                self.delta_loop = -2 * gmpy2.cos(2 * self._pi_over_r)
                self.one = gmpy2.mpfr(1)
        self._theta_cache: dict = {}
        self._tet_cache: dict = {}
        self._apow_cache: dict = {}

    # -- scalars ------------------------------------------------------------

    def A_pow(self, m: int):
        """A^m with A = exp(i*pi/r)."""
        v = self._apow_cache.get(m)
        if v is None:
            if self.float_mode:
                import cmath

                v = cmath.exp(1j * m * self._pi_over_r)
            else:
                with gmpy2.context(self.ctx):
                    v = gmpy2.mpc(gmpy2.cos(m * self._pi_over_r),
                                  gmpy2.sin(m * self._pi_over_r))
            self._apow_cache[m] = v
        return v

    def qdim(self, a: int):
        """Colored unknot value (-1)^a [a+1]."""
        return self.qint[a + 1] if a % 2 == 0 else -self.qint[a + 1]

    def lam(self, a: int, b: int, t: int, inverse: bool = False):
        """Half-twist coefficient for a positive crossing of colors (a, b)."""
        k = (a * (a + 2) + b * (b + 2) - t * (t + 2)) // 2
        sgn = -1 if ((a + b - t) // 2) % 2 else 1
        v = self.A_pow(-k if inverse else k)
        return -v if sgn < 0 else v

    # -- networks -----------------------------------------------------------

    def theta(self, a: int, b: int, c: int):
        """Theta network of an admissible triple (never zero)."""
        key = (a, b, c)
        v = self._theta_cache.get(key)
        if v is not None:
            return v
        if not admissible(a, b, c, self.r):
            raise DomainError(f"triple {key} not admissible at r={self.r}")
        x = (a + b - c) // 2
        y = (b + c - a) // 2
        z = (c + a - b) // 2
        with gmpy2.context(self.ctx):
            v = (self.qfact[x + y + z + 1] * self.qfact[x] * self.qfact[y]
                 * self.qfact[z]) / (
                self.qfact[x + y] * self.qfact[y + z] * self.qfact[x + z])
            if (x + y + z) % 2:
                v = -v
        self._theta_cache[key] = v
        return v

    def tet(self, A: int, B: int, E: int, C: int, D: int, F: int):
        """Tetrahedral network with vertex triples
        (A,B,E), (C,D,E), (A,D,F), (B,C,F)."""
        key = (A, B, E, C, D, F)
        v = self._tet_cache.get(key)
        if v is not None:
            return v
        for tri in ((A, B, E), (C, D, E), (A, D, F), (B, C, F)):
            if not admissible(*tri, self.r):
                raise DomainError(
                    f"tet{key}: triple {tri} not admissible at r={self.r}"
                )
        a1 = (A + B + E) // 2
        a2 = (C + D + E) // 2
        a3 = (A + D + F) // 2
        a4 = (B + C + F) // 2
        b1 = (A + B + C + D) // 2
        b2 = (B + D + E + F) // 2
        b3 = (A + C + E + F) // 2
        lo = max(a1, a2, a3, a4)
        hi = min(b1, b2, b3)
        with gmpy2.context(self.ctx):
            interior = gmpy2.mpfr(1)
            for bj in (b1, b2, b3):
                for ai in (a1, a2, a3, a4):
                    interior *= self.qfact[bj - ai]
            edges = gmpy2.mpfr(1)
            for e in (A, B, C, D, E, F):
                edges *= self.qfact[e]
            total = gmpy2.mpfr(0)
            for s in range(lo, hi + 1):
                num = self.qfact[s + 1]
                if s % 2:
                    num = -num
                den = gmpy2.mpfr(1)
                for ai in (a1, a2, a3, a4):
                    den *= self.qfact[s - ai]
                for bj in (b1, b2, b3):
                    den *= self.qfact[bj - s]
                total += num / den
            v = (interior / edges) * total
        self._tet_cache[key] = v
        return v

    # -- change of fusion tree -----------------------------------------------

    def f_coeff(self, x: int, a: int, b: int, y: int, u: int, e: int):
        """Coefficient of the tree (x(ab)_e)_y in ((xa)_u b)_y."""
        with gmpy2.context(self.ctx):
            return (self.tet(x, a, u, b, y, e) * self.qdim(e)
                    / (self.theta(a, b, e) * self.theta(x, e, y)))

    def g_coeff(self, x: int, a: int, b: int, y: int, e: int, u: int):
        """Coefficient of ((xa)_u b)_y in (x(ab)_e)_y (inverse move)."""
        with gmpy2.context(self.ctx):
            return (self.tet(x, a, u, b, y, e) * self.qdim(u)
                    / (self.theta(x, a, u) * self.theta(u, b, y)))


@lru_cache(maxsize=None)
def _tables(r: int, bits: int) -> LevelTables:
    return LevelTables(r, bits)


def quantum_integer(n: int, level: Level):
    """[n] = sin(2*pi*n/r)/sin(2*pi/r) as a float."""
    t = level.tables()
    if 0 <= n < len(t.qint):
        return float(t.qint[n])
    with gmpy2.context(t.ctx):
        return float(gmpy2.sin(2 * n * t._pi_over_r)
                     / gmpy2.sin(2 * t._pi_over_r))
