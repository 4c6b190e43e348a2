"""SO(3) quantum representations of braid groups on punctured disks.

The m punctures of the disk carry colors (constant on the cycles of the
braid's permutation) and the outer boundary carries the root color.  The
representation space has the left-comb fusion basis: chains
``t_1 = c_1, t_2, ..., t_m = root`` with every step admissible.

A braid letter acting on punctures (i, i+1) is the half-twist diagonal
in the channel where those two punctures fuse directly; for i >= 2 the
basis is moved there and back with the recoupling coefficients F and G
of the level tables.  The letter also swaps the two puncture colors, so
words act between (generally) different colorings; traces are taken for
words whose permutation preserves the coloring.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from fslinks.braid import BraidWord, permutation_of
from fslinks.errors import DomainError, EmptyBlockSpaceError
from fslinks.tqft.level import Level, admissible, colors as level_colors


@dataclass(frozen=True)
class Coloring:
    """Colors of the m punctures plus the outer boundary circle."""

    punctures: tuple[int, ...]
    outer: int

    def swapped(self, i: int) -> "Coloring":
        p = list(self.punctures)
        p[i - 1], p[i] = p[i], p[i - 1]
        return Coloring(tuple(p), self.outer)


def validate_coloring(b: BraidWord, coloring: Coloring, r: int,
                      require_cycle_constant: bool = False) -> None:
    if len(coloring.punctures) != b.strands:
        raise DomainError("coloring must assign one color per strand")
    u = set(level_colors(r))
    for c in coloring.punctures + (coloring.outer,):
        if c not in u:
            raise DomainError(f"{c} is not a color at level {r}")
    if require_cycle_constant:
        perm = permutation_of(b)
        for cyc in perm.cycles():
            vals = {coloring.punctures[p - 1] for p in cyc}
            if len(vals) != 1:
                raise DomainError(
                    "coloring must be constant on the cycles of the braid"
                )


def fusion_basis(punctures: tuple, outer: int, r: int) -> tuple:
    """Admissible left-comb chains (t_1, ..., t_m) with t_m = outer."""
    m = len(punctures)
    if m == 0:
        raise DomainError("need at least one puncture")
    if m == 1:
        return ((punctures[0],),) if punctures[0] == outer else ()
    chains = [(punctures[0],)]
    for i in range(1, m):
        c = punctures[i]
        nxt = []
        for chain in chains:
            t = chain[-1]
            lo, hi = abs(t - c), min(t + c, 2 * (r - 2) - t - c)
            for e in range(lo, hi + 1, 2):
                nxt.append(chain + (e,))
        chains = nxt
    return tuple(ch for ch in chains if ch[-1] == outer)


def block_dimension(punctures: tuple, outer: int, r: int) -> int:
    return len(fusion_basis(punctures, outer, r))


def _identity(n: int):
    return [[gmpy2.mpc(1) if i == j else gmpy2.mpc(0) for j in range(n)]
            for i in range(n)]


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[gmpy2.mpc(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            for j in range(m):
                oi[j] += c * bt[j]
    return out


def _letter_matrix(letter: int, coloring: Coloring, level: Level):
    """Matrix of one braid letter from the coloring's basis to the swapped one."""
    tabs = level.tables()
    r = level.r
    i = abs(letter)
    inverse = letter < 0
    src = fusion_basis(coloring.punctures, coloring.outer, r)
    dst_coloring = coloring.swapped(i)
    dst = fusion_basis(dst_coloring.punctures, dst_coloring.outer, r)
    if not src or not dst:
        raise EmptyBlockSpaceError("zero-dimensional block space")
    a = coloring.punctures[i - 1]
    bcol = coloring.punctures[i]
    mat = [[gmpy2.mpc(0)] * len(src) for _ in range(len(dst))]
    dst_index = {ch: k for k, ch in enumerate(dst)}
    if i == 1:
        for k, ch in enumerate(src):
            # chains are identical except the first entry becomes bcol
            t2 = ch[1] if len(ch) > 1 else coloring.outer
            tgt = (bcol,) + ch[1:]
            mat[dst_index[tgt]][k] = tabs.lam(a, bcol, t2, inverse=inverse)
        return mat, dst_coloring
    for k, ch in enumerate(src):
        x = ch[i - 2]
        u = ch[i - 1]
        y = ch[i] if i < len(ch) else coloring.outer
        lo, hi = abs(a - bcol), min(a + bcol, 2 * (r - 2) - a - bcol)
        for e in range(lo, hi + 1, 2):
            if not (admissible(x, e, y, r) and admissible(a, bcol, e, r)):
                continue
            fw = tabs.f_coeff(x, a, bcol, y, u, e)
            tw = tabs.lam(a, bcol, e, inverse=inverse)
            for u2 in range(abs(x - bcol), min(x + bcol,
                                               2 * (r - 2) - x - bcol) + 1, 2):
                if not (admissible(x, bcol, u2, r)
                        and admissible(u2, a, y, r)):
                    continue
                bw = tabs.g_coeff(x, bcol, a, y, e, u2)
                tgt = ch[:i - 1] + (u2,) + ch[i:]
                kk = dst_index.get(tgt)
                if kk is None:
                    continue
                mat[kk][k] += bw * tw * fw
    return mat, dst_coloring


def rep_matrix(b: BraidWord, level: Level, coloring: Coloring):
    """Matrix of the braid word on the fusion space of the coloring.

    Rows index the basis of the word-permuted coloring, columns the input
    basis; letters act left to right.  Raises EmptyBlockSpaceError when
    the space is zero-dimensional.
    """
    validate_coloring(b, coloring, level.r)
    with gmpy2.context(level.context()):
        src = fusion_basis(coloring.punctures, coloring.outer, level.r)
        if not src:
            raise EmptyBlockSpaceError("zero-dimensional block space")
        mat = _identity(len(src))
        cur = coloring
        for letter in b.letters:
            lm, cur = _letter_matrix(letter, cur, level)
            mat = _matmul(lm, mat)
        return mat


def rep_trace(b: BraidWord, level: Level, coloring: Coloring):
    """Trace of the word's matrix (permutation must preserve the coloring)."""
    validate_coloring(b, coloring, level.r, require_cycle_constant=True)
    with gmpy2.context(level.context()):
        mat = rep_matrix(b, level, coloring)
        if len(mat) != len(mat[0]):
            raise DomainError("word does not preserve the coloring")
        tr = gmpy2.mpc(0)
        for i in range(len(mat)):
            tr += mat[i][i]
        return tr
