"""Brute-force Temperley-Lieb skein oracle.

Ground truth for the TQFT engine: colored diagrams are evaluated by
cabling every component, inserting one Jones-Wenzl projector per
component, expanding all crossings with the Kauffman bracket, and
counting loops.  Nothing here touches the recoupling formulas (theta,
tetrahedra, half-twists, 6j), so agreement between this module and the
representation engine is a genuine two-route check.

The sweep keeps a frontier state: a linear combination of planar
matchings whose points either pair with each other or hang open on a
tagged return arc.  Strand positions are closed onto their returns as
soon as no remaining letter can touch them, which keeps the state from
ballooning on wide cablings.

Channel traces are extracted by encircling all cables with k = 0, 1, ...
parallel plain loops at the top of the braid; each loop scales channel t
by its encirclement eigenvalue, and the resulting linear system is
solved for the traces.  Both the right-hand sides and the matrix entries
are sweep values, so the extraction stays inside the oracle.

Resolution convention (validated against the half-twist table in the
tests): a positive braid letter resolves as ``A^-1 (straight) + A
(turnback)``; with the spec's half-twist coefficients this makes the
positive-letter curl factor ``-A^-3``.

The oracle runs at the level's precision; 53 bits selects the plain
``complex`` fast path, which is the default for the heavy Turaev-Viro
assemblies (the acceptance tolerance is 1e-9).
"""

from __future__ import annotations

from functools import lru_cache

import gmpy2

from fslinks.braid import BraidWord, permutation_of
from fslinks.diagram import LinkDiagram
from fslinks.errors import (
    DomainError,
    UnsupportedDiagramError,
    WidthLimitError,
)
from fslinks.tqft.level import Level, LevelTables, colors as level_colors


# ---------------------------------------------------------------------------
# chain resolution on degree-<=2 graphs


class _Chains:
    """Union of arcs: walk chains between ends, count closed loops."""

    def __init__(self):
        self.edges: list = []
        self.inc: dict = {}

    def add(self, u, v) -> None:
        eid = len(self.edges)
        self.edges.append((u, v))
        self.inc.setdefault(u, []).append(eid)
        self.inc.setdefault(v, []).append(eid)

    def resolve_open(self, ends) -> tuple:
        """Pair chain ends; count interior closed loops."""
        pairing: dict = {}
        used = set()
        for start in ends:
            if start in pairing:
                continue
            cur = start
            while True:
                eids = [e for e in self.inc.get(cur, ()) if e not in used]
                if not eids:
                    break
                e = eids[0]
                used.add(e)
                u, v = self.edges[e]
                cur = v if u == cur else u
            pairing[start] = cur
            pairing[cur] = start
        loops = 0
        for e0 in range(len(self.edges)):
            if e0 in used:
                continue
            loops += 1
            used.add(e0)
            u0, cur = self.edges[e0]
            while cur != u0:
                e = next(x for x in self.inc[cur] if x not in used)
                used.add(e)
                a, b = self.edges[e]
                cur = b if a == cur else a
        return pairing, loops


# ---------------------------------------------------------------------------
# Temperley-Lieb elements and Jones-Wenzl projectors


def _tl_identity(n: int) -> tuple:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def _tl_e(n: int, i: int) -> tuple:
    pair = list(_tl_identity(n))
    pair[i], pair[i + 1] = i + 1, i
    pair[n + i], pair[n + i + 1] = n + i + 1, n + i
    return tuple(pair)


def _tl_compose(d_low: tuple, d_high: tuple, n: int) -> tuple:
    """Glue d_low's top to d_high's bottom: (pairing, closed loops).

    Result slots: bottoms of d_low (0..n-1), tops of d_high (n..2n-1).
    """
    ch = _Chains()
    for i in range(2 * n):
        j = d_low[i]
        if i < j:
            ch.add(("L", i), ("L", j))
    for i in range(2 * n):
        j = d_high[i]
        if i < j:
            ch.add(("H", i), ("H", j))
    for i in range(n):
        ch.add(("L", n + i), ("H", i))
    ends = [("L", i) for i in range(n)] + [("H", n + i) for i in range(n)]
    pairing, loops = ch.resolve_open(ends)
    out = [0] * (2 * n)
    for node in ends:
        out[node[1]] = pairing[node][1]
    return tuple(out), loops


def _element_mult(x: dict, y: dict, n: int, delta) -> dict:
    out: dict = {}
    for dx, cx in x.items():
        for dy, cy in y.items():
            d, loops = _tl_compose(dx, dy, n)
            coeff = cx * cy * delta ** loops
            out[d] = out.get(d, coeff * 0) + coeff
    return {d: c for d, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def _jw(n: int, r: int, bits: int) -> tuple:
    """Jones-Wenzl projector f_n expanded in the TL diagram basis."""
    from fslinks.tqft.level import _tables

    t = _tables(r, bits)
    with gmpy2.context(t.ctx):
        if n <= 1:
            return ((_tl_identity(n), t.one),)
        prev = dict(_jw(n - 1, r, bits))
        fp1 = {}
        m = n - 1
        for d, c in prev.items():
            pair = [0] * (2 * n)
            for i in range(2 * m):
                j = d[i]
                pair[i if i < m else i + 1] = j if j < m else j + 1
            pair[m] = 2 * n - 1
            pair[2 * n - 1] = m
            fp1[tuple(pair)] = c
        e = {_tl_e(n, n - 2): t.one}
        mid = _element_mult(fp1, e, n, t.delta_loop)
        term = _element_mult(mid, fp1, n, t.delta_loop)
        # Wenzl coefficient Delta_{n-2}/Delta_{n-1} with Delta_k = (-1)^k [k+1]
        # (the loop value here is -[2], hence the sign)
        coeff = -t.qint[n - 1] / t.qint[n]
        out = dict(fp1)
        for d, c in term.items():
            out[d] = out.get(d, c * 0) - coeff * c
        return tuple((d, c) for d, c in out.items() if c != 0)


# ---------------------------------------------------------------------------
# the frontier sweep
#
# A point entry is an int: a value >= 0 is the index of the partner point,
# a value < 0 is an open-end tag code (-1 - tag_index).  Entries are packed
# into a bytes object with offset 64 so state keys hash and copy at C speed.
# A state key is (points bytes, sorted tuple of wire pairs); wires record
# return tags that were connected to each other.


_OFF = 64


def _pack(vals) -> bytes:
    return bytes(v + _OFF for v in vals)


def _unpack(data: bytes) -> list:
    return [b - _OFF for b in data]


class _Sweep:
    def __init__(self, tables: LevelTables):
        self.t = tables
        self.one = tables.one
        self.state: dict = {(b"", ()): tables.one}

    # -- generic planar pairing (Jones-Wenzl terms, cups, caps) -------------

    def _apply_pairing_key(self, key, pos, n_in, n_out, tl_pairs):
        points = _unpack(key[0])
        wires = key[1]
        ch = _Chains()
        for idx in range(n_in + n_out):
            j = tl_pairs[idx]
            if idx < j:
                ch.add(("w", idx), ("w", j))
        ends = []
        for i in range(n_in):
            p = points[pos + i]
            if p >= 0:
                if pos <= p < pos + n_in:
                    if pos + i < p:
                        ch.add(("w", i), ("w", p - pos))
                else:
                    ch.add(("w", i), ("x", p))
                    ends.append(("x", p))
            else:
                ch.add(("w", i), ("g", p))
                ends.append(("g", p))
        for o in range(n_out):
            ch.add(("w", n_in + o), ("o", o))
            ends.append(("o", o))
        pairing, loops = ch.resolve_open(ends)

        def newpos(old: int) -> int:
            return old if old < pos else old - n_in + n_out

        new_points: list = []
        for i, p in enumerate(points):
            if pos <= i < pos + n_in:
                continue
            new_points.append(p)
        for o in range(n_out):
            new_points.insert(pos + o, None)
        final = [False] * len(new_points)
        for o in range(n_out):
            final[pos + o] = True

        new_wires = list(wires)

        def entry_for(node):
            kind, val = node
            if kind == "x":
                return newpos(val)
            if kind == "g":
                return val
            return pos + val  # "o"

        seen = set()
        for node in ends:
            if node in seen:
                continue
            mate = pairing[node]
            seen.add(node)
            seen.add(mate)
            for nd, other in ((node, mate), (mate, node)):
                kind, val = nd
                if kind == "o":
                    new_points[pos + val] = entry_for(other)
                    final[pos + val] = True
                elif kind == "x":
                    new_points[newpos(val)] = entry_for(other)
                    final[newpos(val)] = True
            if node[0] == "g" and mate[0] == "g":
                a, b = node[1], mate[1]
                new_wires.append((a, b) if a < b else (b, a))
        for i, p in enumerate(new_points):
            if not final[i] and p is not None and p >= 0:
                new_points[i] = newpos(p)
        return (_pack(new_points), tuple(sorted(new_wires))), loops

    def apply_pairing(self, pos, n_in, n_out, terms) -> None:
        delta = self.t.delta_loop
        new: dict = {}
        for key, coeff in self.state.items():
            for tl_pairs, c in terms:
                k2, loops = self._apply_pairing_key(key, pos, n_in, n_out,
                                                    tl_pairs)
                v = coeff * c * (delta ** loops if loops else self.one)
                prev = new.get(k2)
                new[k2] = v if prev is None else prev + v
        self.state = {k: v for k, v in new.items() if v != 0}

    # -- specialized hot operations ------------------------------------------

    def cross(self, pos: int, s: int) -> None:
        """Kauffman-resolve a crossing of points pos, pos+1.

        ``s = +1`` for a positive braid letter: A^-1 straight + A turnback.
        """
        straight = self.t.A_pow(-s)
        turn = self.t.A_pow(s)
        delta = self.t.delta_loop
        turn_delta = turn * delta
        new: dict = {}
        for key, coeff in self.state.items():
            raw, wires = key
            v1 = coeff * straight
            prev = new.get(key)
            new[key] = v1 if prev is None else prev + v1
            p, q = raw[pos] - _OFF, raw[pos + 1] - _OFF
            pts = bytearray(raw)
            pts[pos], pts[pos + 1] = pos + 1 + _OFF, pos + _OFF
            if p == pos + 1:
                # the two points were partners: turnback closes a loop
                k2 = (bytes(pts), wires)
                v2 = coeff * turn_delta
            else:
                w2 = wires
                if p >= 0 and q >= 0:
                    pts[p], pts[q] = q + _OFF, p + _OFF
                elif p >= 0:
                    pts[p] = q + _OFF
                elif q >= 0:
                    pts[q] = p + _OFF
                else:
                    a, b = (p, q) if p < q else (q, p)
                    w2 = tuple(sorted(wires + ((a, b),)))
                k2 = (bytes(pts), w2)
                v2 = coeff * turn
            prev = new.get(k2)
            new[k2] = v2 if prev is None else prev + v2
        self.state = {k: v for k, v in new.items() if v != 0}

    def slide(self, base: int, m: int, k: int, s: int) -> None:
        """Cross the m points at [base, base+m) rightward over k points."""
        for t in range(m):
            for x in range(k):
                self.cross(base + (m - 1 - t) + x, s)

    def cup2(self, pos: int) -> None:
        """Insert a paired pair of points at pos."""
        new: dict = {}
        for (raw, wires), coeff in self.state.items():
            pts = bytearray(len(raw) + 2)
            for i, pb in enumerate(raw):
                v = pb - _OFF
                if v >= pos:
                    v += 2
                j = i if i < pos else i + 2
                pts[j] = v + _OFF
            pts[pos] = pos + 1 + _OFF
            pts[pos + 1] = pos + _OFF
            k2 = (bytes(pts), wires)
            prev = new.get(k2)
            new[k2] = coeff if prev is None else prev + coeff
        self.state = new

    def cap2(self, pos: int) -> None:
        """Join the points at pos, pos+1 and drop them."""
        delta = self.t.delta_loop
        new: dict = {}
        for (raw, wires), coeff in self.state.items():
            p, q = raw[pos] - _OFF, raw[pos + 1] - _OFF
            pts = bytearray(raw)
            w = None
            dpow = 0
            if p == pos + 1:
                dpow = 1
            elif p >= 0 and q >= 0:
                pts[p], pts[q] = q + _OFF, p + _OFF
            elif p >= 0:
                pts[p] = q + _OFF
            elif q >= 0:
                pts[q] = p + _OFF
            else:
                a, b = (p, q) if p < q else (q, p)
                w = tuple(sorted(wires + ((a, b),)))
            del pts[pos:pos + 2]
            for i, pb in enumerate(pts):
                v = pb - _OFF
                if v >= 0 and v > pos:
                    pts[i] = pb - 2
            k2 = (bytes(pts), wires if w is None else w)
            v = coeff * delta if dpow else coeff
            prev = new.get(k2)
            new[k2] = v if prev is None else prev + v
        self.state = {k: v for k, v in new.items() if v != 0}

    def close_point(self, pos: int, tagcode: int) -> None:
        """Join the point at pos with the open end carrying ``tagcode``.

        Exactly one frontier point disappears: the closed one.  The other
        end of the return is either a tag held by another point, a tag
        inside a wire, or the closed point's own far end (a loop).
        """
        delta = self.t.delta_loop
        tagbyte = tagcode + _OFF
        new: dict = {}
        for (raw, wires), coeff in self.state.items():
            far = raw[pos] - _OFF
            dpow = 0
            pts = bytearray(raw)
            w = None
            if far == tagcode:
                dpow = 1
            else:
                holder = raw.find(tagbyte)
                if holder == pos:
                    holder = raw.find(tagbyte, pos + 1)
                if holder >= 0:
                    if far >= 0:
                        pts[far] = holder + _OFF
                        pts[holder] = far + _OFF
                    else:
                        pts[holder] = far + _OFF
                else:
                    w = list(wires)
                    hit = next((x for x in w if tagcode in x), None)
                    if hit is None:
                        raise DomainError("return tag not found in state")
                    w.remove(hit)
                    other = hit[0] if hit[1] == tagcode else hit[1]
                    if far >= 0:
                        pts[far] = other + _OFF
                    else:
                        a, b = (far, other) if far < other else (other, far)
                        w.append((a, b))
            del pts[pos]
            for i, pb in enumerate(pts):
                v = pb - _OFF
                if v >= 0 and v > pos:
                    pts[i] = pb - 1
            k2 = (bytes(pts), wires if w is None else tuple(sorted(w)))
            v = coeff * delta if dpow else coeff
            prev = new.get(k2)
            new[k2] = v if prev is None else prev + v
        self.state = {k: v for k, v in new.items() if v != 0}

    def scalar(self):
        """Total coefficient once every point has been closed."""
        total = None
        for (raw, wires), coeff in self.state.items():
            if raw or wires:
                raise DomainError("sweep not fully contracted")
            total = coeff if total is None else total + coeff
        return total if total is not None else self.one * 0


# ---------------------------------------------------------------------------
# diagram sweeps


def _strand_labels(b: BraidWord) -> dict:
    perm = permutation_of(b)
    names = {}
    for cyc in perm.cycles():
        lbl = f"s{min(cyc)}"
        for p in cyc:
            names[p] = lbl
    return names


def _loop_pass(sw: _Sweep, width: int) -> None:
    """One plain unknotted loop around the first ``width`` frontier points."""
    sw.cup2(0)
    sw.slide(1, 1, width, 1)    # front arm passes over
    sw.slide(0, 1, width, -1)   # back arm passes under
    sw.cap2(width)


def _axis_band(sw: _Sweep, width: int, color: int, tables: LevelTables) -> None:
    """Axis of a braided link: a Jones-Wenzl cabled band around all cables."""
    a = color
    if a == 0:
        return
    for _ in range(a):
        sw.cup2(0)  # nested cups build the band
    sw.apply_pairing(a, a, a, _jw(a, tables.r, tables.bits))
    sw.slide(a, a, width, 1)
    sw.slide(0, a, width, -1)
    for _ in range(a):
        sw.cap2(width)  # innermost caps first


def _run_closure_sweep(b: BraidWord, widths: tuple, tables: LevelTables,
                       top_loops: int = 0, axis_color: int = 0,
                       plat: bool = False):
    """Scalar value of the cabled closure (or plat) of a word.

    ``widths[p-1]`` is the cable width at position p; one Jones-Wenzl
    projector per component.  ``top_loops`` plain loops wrap all cables at
    the top; ``axis_color`` wraps a colored band around everything below
    the letters.  Positions are closed onto their returns as soon as no
    remaining letter touches them (unless an axis band still needs them).
    """
    n = b.strands
    names = _strand_labels(b)
    if plat and (n != 2 or widths[0] != widths[1]):
        raise DomainError("plat sweep needs two equal-width cables")
    with gmpy2.context(tables.ctx):
        sw = _Sweep(tables)
        tagcode = {}
        if plat:
            w = widths[0]
            points = [2 * w - 1 - i for i in range(2 * w)]
        else:
            points = []
            for p in range(1, n + 1):
                for i in range(widths[p - 1]):
                    tagcode[(p, i)] = -1 - len(tagcode)
                    points.append(tagcode[(p, i)])
        sw.state = {(_pack(points), ()): sw.one}

        at = {p: p for p in range(1, n + 1)}  # cable at each position
        live = set(range(1, n + 1))
        wid = lambda p: widths[at[p] - 1]

        def offset(p: int) -> int:
            return sum(wid(q) for q in range(1, p) if q in live)

        jw_done = set()

        def ensure_jw(p: int) -> None:
            lbl = names[at[p]]
            if lbl in jw_done:
                return
            jw_done.add(lbl)
            if wid(p) == 0:
                return
            sw.apply_pairing(offset(p), wid(p), wid(p),
                             _jw(wid(p), tables.r, tables.bits))

        if not plat:
            for p in range(1, n + 1):
                ensure_jw(p)
        for _ in range(top_loops):
            _loop_pass(sw, sum(widths))

        def close_position(p: int) -> None:
            if wid(p) != widths[p - 1]:
                raise DomainError(
                    "cable widths not constant on closure components"
                )
            base = offset(p)
            for i in range(widths[p - 1] - 1, -1, -1):
                sw.close_point(base + i, tagcode[(p, i)])
            live.discard(p)

        remaining = {p: 0 for p in range(1, n + 1)}
        for e in b.letters:
            remaining[abs(e)] += 1
            remaining[abs(e) + 1] += 1

        early = not plat and axis_color == 0
        for e in b.letters:
            i = abs(e)
            s = 1 if e > 0 else -1
            ensure_jw(i)
            ensure_jw(i + 1)
            sw.slide(offset(i), wid(i), wid(i + 1), s)
            at[i], at[i + 1] = at[i + 1], at[i]
            remaining[i] -= 1
            remaining[i + 1] -= 1
            if early:
                for p in (i, i + 1):
                    if remaining[p] == 0 and p in live:
                        close_position(p)

        for p in range(1, n + 1):
            if p in live:
                ensure_jw(p)
        if plat:
            w = widths[0]
            cap = tuple(2 * w - 1 - i for i in range(2 * w))
            sw.apply_pairing(0, 2 * w, 0, ((cap, sw.one),))
            return sw.scalar()
        if axis_color:
            _axis_band(sw, sum(wid(p) for p in sorted(live)), axis_color,
                       tables)
        for p in range(1, n + 1):
            if p in live:
                close_position(p)
        return sw.scalar()


# ---------------------------------------------------------------------------
# public API


def _component_widths(b: BraidWord, coloring: dict) -> tuple:
    names = _strand_labels(b)
    widths = []
    for p in range(1, b.strands + 1):
        lbl = names[p]
        if lbl not in coloring:
            raise DomainError(f"no color for component {lbl}")
        widths.append(coloring[lbl])
    return tuple(widths)


def tl_bracket_oracle(d: LinkDiagram, level: Level, coloring: dict,
                      width_limit: int = 10):
    """Colored Kauffman-bracket value of a diagram built by this library.

    ``coloring`` maps component labels to colors.  The diagram must carry
    a layered recipe (the closure / braided / plat builders attach one).
    Every closed loop carries the loop value, so the 0-crossing unknot of
    color a evaluates to the quantum dimension (-1)^a [a+1].
    """
    if d.layout is None:
        raise UnsupportedDiagramError(
            "oracle needs a diagram with a layered construction recipe"
        )
    kind, b = d.layout
    total = sum(coloring.values())
    if total > width_limit:
        raise WidthLimitError(
            f"total cabled width {total} exceeds the limit {width_limit}"
        )
    tabs = level.tables()
    if kind == "closure":
        return _run_closure_sweep(b, _component_widths(b, coloring), tabs)
    if kind == "plat":
        if "s1" not in coloring:
            raise DomainError("plat oracle expects a color for component s1")
        w = coloring["s1"]
        return _run_closure_sweep(b, (w, w), tabs, plat=True)
    if kind == "braided":
        if "axis" not in coloring:
            raise DomainError("braided oracle expects a color for the axis")
        strand_coloring = {k: v for k, v in coloring.items() if k != "axis"}
        return _run_closure_sweep(b, _component_widths(b, strand_coloring),
                                  tabs, axis_color=coloring["axis"])
    raise UnsupportedDiagramError(f"unknown layout kind {kind!r}")


@lru_cache(maxsize=None)
def _loop_channel_weight(t_color: int, k: int, r: int, bits: int):
    """Sweep value of a closed t-strand encircled by k plain loops."""
    from fslinks.tqft.level import _tables

    tabs = _tables(r, bits)
    return _run_closure_sweep(BraidWord(1, ()), (t_color,), tabs, top_loops=k)


def oracle_rep_traces(b: BraidWord, level: Level, puncture_colors: tuple,
                      width_limit: int = 24) -> dict:
    """Channel traces of the cabled braid, one per outer color.

    Encircling the cables with k parallel plain loops scales channel t by
    the k-th power of its encirclement eigenvalue, so the sweep values for
    k = 0..(#colors - 1) form a solvable system E_k = sum_t M[k][t] Tr_t
    whose matrix entries are themselves sweep values.
    """
    if len(puncture_colors) != b.strands:
        raise DomainError("need one color per strand")
    names = _strand_labels(b)
    for p in range(1, b.strands + 1):
        if puncture_colors[p - 1] != puncture_colors[int(names[p][1:]) - 1]:
            raise DomainError("coloring must be constant on closure cycles")
    if sum(puncture_colors) > width_limit:
        raise WidthLimitError("total cabled width exceeds the limit")
    tabs = level.tables()
    cols = level_colors(level.r)
    m = len(cols)
    with gmpy2.context(tabs.ctx):
        rhs = [
            _run_closure_sweep(b, tuple(puncture_colors), tabs, top_loops=k)
            for k in range(m)
        ]
        mat = [
            [_loop_channel_weight(t, k, level.r, level.precision_bits)
             for t in cols]
            for k in range(m)
        ]
        sol = _solve(mat, rhs, tabs)
    return {t: sol[i] for i, t in enumerate(cols)}


def _solve(mat, rhs, tables: LevelTables):
    """Gaussian elimination with partial pivoting."""
    n = len(mat)
    with gmpy2.context(tables.ctx):
        a = [[x * (1 + 0j) if tables.float_mode else x for x in row]
             + [rhs[i]] for i, row in enumerate(mat)]
        for col in range(n):
            piv = max(range(col, n), key=lambda rr: abs(a[rr][col]))
            if abs(a[piv][col]) == 0:
                raise DomainError("singular channel-extraction system")
            a[col], a[piv] = a[piv], a[col]
            inv = 1 / a[col][col]
            for j in range(col, n + 1):
                a[col][j] *= inv
            for rr in range(n):
                if rr != col and a[rr][col] != 0:
                    f = a[rr][col]
                    for j in range(col, n + 1):
                        a[rr][j] -= f * a[col][j]
        return [a[i][n] for i in range(n)]


def oracle_tv_braided_link(b: BraidWord, level: Level,
                           width_limit: int = 24):
    """Turaev-Viro value of the braided-link complement, oracle route.

    Sums |Tr|^2 over cycle-constant puncture colorings and all outer
    colors, with every trace extracted from sweep values only.
    """
    cols = level_colors(level.r)
    cycles = permutation_of(b).cycles()
    tabs = level.tables()
    with gmpy2.context(tabs.ctx):
        total = tabs.one * 0
        idx = [0] * len(cycles)
        while True:
            coloring = [0] * b.strands
            for ci, cyc in enumerate(cycles):
                for p in cyc:
                    coloring[p - 1] = cols[idx[ci]]
            traces = oracle_rep_traces(b, level, tuple(coloring), width_limit)
            for t in cols:
                total += abs(traces[t]) ** 2
            j = len(cycles) - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < len(cols):
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                break
        return total
