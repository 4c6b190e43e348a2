"""Turaev-Viro values of braided-link complements via trace sums.

The complement of a braided link is the mapping torus of a punctured
disk, so its Turaev-Viro value at an odd level is the sum of |trace|^2
of the quantum representation over all colorings of the punctures
(constant on the braid's cycles) and of the outer boundary.  The slope
``(2*pi/r) * log TV`` is the quantity the volume conjecture compares to
the hyperbolic volume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import gmpy2

from fslinks.braid import BraidWord, make_bk, permutation_of
from fslinks.constants import V8
from fslinks.errors import DomainError
from fslinks.tqft.level import Level, colors as level_colors
from fslinks.tqft.rep import Coloring, EmptyBlockSpaceError, fusion_basis, rep_trace


def _cycle_colorings(b: BraidWord, r: int):
    """Cycle-constant puncture colorings plus outer color, lexicographically."""
    cols = level_colors(r)
    cycles = permutation_of(b).cycles()
    idx = [0] * (len(cycles) + 1)  # last slot = outer color
    while True:
        punctures = [0] * b.strands
        for ci, cyc in enumerate(cycles):
            for p in cyc:
                punctures[p - 1] = cols[idx[ci]]
        yield Coloring(tuple(punctures), cols[idx[-1]])
        j = len(idx) - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(cols):
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return


def tv_braided_link(b: BraidWord, level: Level):
    """Sum of |Tr|^2 over colorings, in fixed lexicographic order."""
    with gmpy2.context(level.context()):
        total = gmpy2.mpfr(0)
        for coloring in _cycle_colorings(b, level.r):
            if not fusion_basis(coloring.punctures, coloring.outer, level.r):
                continue
            tr = rep_trace(b, level, coloring)
            total += abs(tr) ** 2
        return total


@dataclass(frozen=True)
class TVPoint:
    r: int
    tv: float
    slope: Optional[float]
    tail_min: Optional[float] = None


@dataclass(frozen=True)
class TVSeries:
    points: tuple[TVPoint, ...]
    target: Optional[float] = None


def _detect_bk_target(b: BraidWord) -> Optional[float]:
    for k in range(1, 41):
        cand = make_bk(k)
        if cand.strands == b.strands and cand.letters == b.letters:
            return 2 * k * V8
    return None


def slope_series(b: BraidWord, r_list, precision_bits: int = 128) -> TVSeries:
    """Per-level TV values and slopes (2*pi/r) log TV, with the lim-inf proxy.

    ``tail_min`` at each row is the minimum slope from that row onward.
    The target line 2k*v8 is attached when the word is one of the braided
    link family words.
    """
    rs = list(r_list)
    if any(r % 2 == 0 or r < 3 for r in rs):
        raise DomainError("levels must be odd and >= 3")
    if sorted(rs) != rs:
        raise DomainError("levels must be ascending")
    points = []
    for r in rs:
        level = Level(r, precision_bits)
        with gmpy2.context(level.context()):
            tv = tv_braided_link(b, level)
            if tv > 0:
                pi = gmpy2.const_pi()
                slope = float(2 * pi / r * gmpy2.log(tv))
            else:
                slope = None
        points.append(TVPoint(r=r, tv=float(tv), slope=slope))
    tail = None
    out = []
    for pt in reversed(points):
        if pt.slope is not None:
            tail = pt.slope if tail is None else min(tail, pt.slope)
        out.append(TVPoint(pt.r, pt.tv, pt.slope, tail))
    out.reverse()
    return TVSeries(points=tuple(out), target=_detect_bk_target(b))
