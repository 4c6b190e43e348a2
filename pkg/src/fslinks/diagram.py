"""Planar link diagrams as combinatorial maps, built from braid words.

A diagram is a PD-code-style object: each crossing lists its four incident
arc identifiers in counterclockwise order together with a sign.  Faces are
computed from the rotation system (no floating point), so the Euler check
``V - E + F = 2`` doubles as a planarity assertion on everything the
builders produce.

Crossingless unknot components cannot appear in a PD code; they are kept
in ``free_loops``.  The one kind the face machinery fully supports is a
loop that encircles the whole crossing graph (the front strand ``C`` of
the augmentation): it splits the unbounded face into an annulus and a new
outer face, which is how the region count ``r = k + 3`` of a length-k
closure with front strand comes out.

Conventions (fixed once, verified by the Euler property tests):

* dart = ``(crossing index, slot)``, slots counterclockwise;
* face walk: ``next(d) = rotate_ccw(mate(d))``; the face traced from dart
  ``(c, s)`` lies on the RIGHT when traveling away from ``c`` along the
  arc in slot ``s``;
* crossing sign from strand orientations: if the over-strand enters at
  slot ``p`` and the under-strand at slot ``q`` then the sign is ``+1``
  exactly when ``(q - p) % 4 == 3`` (anchored so that the braid letter
  ``+i`` produces a ``+1`` crossing with strands oriented down the page).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from fslinks.braid import BraidWord, permutation_of
from fslinks.errors import (
    DisconnectedGraphError,
    DomainError,
    EmptyDiagramError,
    NoValidTreeError,
)

Dart = tuple[int, int]

#: sentinel used in dual paths for "crossing the front loop C"
FRONT_LOOP = None


@dataclass(frozen=True)
class Crossing:
    """Four arc ids in counterclockwise order, the sign, and the over strand.

    ``over_diag`` records which diagonal passes over: 0 for the
    (slot 0, slot 2) diagonal, 1 for (slot 1, slot 3).  The sign depends
    on component orientations; the diagonal does not.
    """

    arcs: tuple[int, int, int, int]
    sign: int
    over_diag: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise DomainError(f"crossing sign must be +-1, got {self.sign}")
        if self.over_diag not in (0, 1):
            raise DomainError(f"over_diag must be 0 or 1, got {self.over_diag}")


@dataclass(frozen=True)
class FreeLoop:
    """Crossingless unknot component; ``encircles_all`` marks the front strand."""

    component: str
    encircles_all: bool = False


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[str, frozenset[int]], ...]
    free_loops: tuple[FreeLoop, ...] = ()
    outer_dart: Optional[Dart] = None
    #: per-arc head dart: the end the strand flows into (orientation data)
    heads: dict = field(default_factory=dict, compare=False)
    layout: Optional[tuple] = None  # provenance recipe for the skein oracle

    def crossing_count(self) -> int:
        return len(self.crossings)

    def component_count(self) -> int:
        return len(self.components) + len(self.free_loops)

    def component_labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.components) + tuple(
            fl.component for fl in self.free_loops
        )

    def arcs(self) -> tuple[int, ...]:
        seen = set()
        for c in self.crossings:
            seen.update(c.arcs)
        return tuple(sorted(seen))

    def component_of_arc(self) -> dict[int, str]:
        out: dict[int, str] = {}
        for lbl, arcs in self.components:
            for a in arcs:
                out[a] = lbl
        return out


def validate_diagram(d: LinkDiagram) -> None:
    """Structural invariants: arc double-occurrence and component consistency."""
    occ: dict[int, int] = {}
    for c in d.crossings:
        for a in c.arcs:
            occ[a] = occ.get(a, 0) + 1
    for a, n in occ.items():
        if n != 2:
            raise DomainError(f"arc {a} occurs {n} times (expected 2)")
    labeled = set()
    for lbl, arcs in d.components:
        if not arcs:
            raise DomainError(f"component {lbl} has no arcs")
        labeled |= arcs
    if labeled != set(occ):
        raise DomainError("component partition does not cover the arcs exactly")
    comp = d.component_of_arc()
    for c in d.crossings:
        a0, a1, a2, a3 = c.arcs
        if comp[a1] != comp[a3] or comp[a0] != comp[a2]:
            raise DomainError("component labels break at a crossing")


# ---------------------------------------------------------------------------
# faces / combinatorial map


@dataclass(frozen=True)
class Face:
    index: int
    darts: tuple[Dart, ...]
    arcs: tuple[int, ...]
    touches_front: bool = False
    is_outer: bool = False


@dataclass(frozen=True, eq=False)
class PlanarGraph4V:
    """4-valent planar graph of a diagram: vertices = crossings, edges = arcs."""

    signs: tuple[int, ...]
    edge_ends: dict
    faces: tuple[Face, ...]
    outer_face: int
    annulus_face: Optional[int]  # face between graph and front loop, if any
    euler_verify: bool
    dart_face: dict

    def vertex_count(self) -> int:
        return len(self.signs)

    def edge_count_counting_front(self) -> int:
        return len(self.edge_ends) + (1 if self.annulus_face is not None else 0)

    def face_count(self) -> int:
        return len(self.faces)

    def faces_not_touching_front(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if not f.touches_front)

    def face_of_dart(self, dart: Dart) -> int:
        return self.dart_face[dart]

    def edge_faces(self, arc: int) -> tuple[int, int]:
        d1, d2 = self.edge_ends[arc]
        return (self.dart_face[d1], self.dart_face[d2])


def _mates(crossings: Sequence[Crossing]) -> dict:
    where: dict[int, list[Dart]] = {}
    for ci, c in enumerate(crossings):
        for slot, a in enumerate(c.arcs):
            where.setdefault(a, []).append((ci, slot))
    mate: dict[Dart, Dart] = {}
    for a, ends in where.items():
        if len(ends) != 2:
            raise DomainError(f"arc {a} has {len(ends)} ends")
        mate[ends[0]] = ends[1]
        mate[ends[1]] = ends[0]
    return mate


def project_to_graph(d: LinkDiagram) -> PlanarGraph4V:
    """Rotation-system projection; raises EmptyDiagramError on 0 crossings."""
    if not d.crossings:
        raise EmptyDiagramError("diagram has no crossings")
    mate = _mates(d.crossings)
    darts = [(ci, s) for ci in range(len(d.crossings)) for s in range(4)]

    def nxt(dart: Dart) -> Dart:
        ci, s = mate[dart]
        return (ci, (s + 1) % 4)

    seen: set[Dart] = set()
    orbits: list[tuple[Dart, ...]] = []
    for start in darts:
        if start in seen:
            continue
        orbit = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = nxt(cur)
        orbits.append(tuple(orbit))

    # connectivity of the 4-valent graph
    adj: dict[int, set[int]] = {ci: set() for ci in range(len(d.crossings))}
    for (ci, _s), (cj, _t) in mate.items():
        adj[ci].add(cj)
    stack = [0]
    reached = {0}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != len(d.crossings):
        raise DisconnectedGraphError(
            "projection graph is disconnected (some generator is missing)"
        )

    front = [fl for fl in d.free_loops if fl.encircles_all]
    plain = [fl for fl in d.free_loops if not fl.encircles_all]
    if plain:
        raise DomainError(
            "faces are only defined here for free loops that encircle the graph"
        )
    if len(front) > 1:
        raise DomainError("at most one encircling front loop is supported")

    if d.outer_dart is None:
        raise DomainError("diagram carries no outer-face mark")
    unbounded_orbit = next(i for i, o in enumerate(orbits) if d.outer_dart in o)

    faces_list: list[Face] = []
    arc_of = lambda dart: d.crossings[dart[0]].arcs[dart[1]]
    for i, o in enumerate(orbits):
        faces_list.append(
            Face(
                index=i,
                darts=o,
                arcs=tuple(sorted(arc_of(dd) for dd in o)),
                touches_front=(bool(front) and i == unbounded_orbit),
                is_outer=(not front and i == unbounded_orbit),
            )
        )
    annulus = None
    if front:
        annulus = unbounded_orbit
        faces_list.append(
            Face(
                index=len(orbits),
                darts=(),
                arcs=(),
                touches_front=True,
                is_outer=True,
            )
        )
    outer = next(f.index for f in faces_list if f.is_outer)

    v = len(d.crossings)
    e = len(mate) // 2 + (1 if front else 0)
    f_count = len(faces_list)
    euler = (v - e + f_count == 2)

    dart_face = {}
    for fc in faces_list:
        for dd in fc.darts:
            dart_face[dd] = fc.index

    edge_ends = {}
    for dart, m in mate.items():
        a = arc_of(dart)
        if a not in edge_ends:
            edge_ends[a] = (dart, m)

    return PlanarGraph4V(
        signs=tuple(c.sign for c in d.crossings),
        edge_ends=edge_ends,
        faces=tuple(faces_list),
        outer_face=outer,
        annulus_face=annulus,
        euler_verify=euler,
        dart_face=dart_face,
    )


def faces(g: PlanarGraph4V) -> tuple[Face, ...]:
    """Faces of the graph; ``g.euler_verify`` asserts V - E + F = 2."""
    return g.faces


def euler_check(d: LinkDiagram) -> bool:
    """Planarity check on the rotation system; no outer-face mark needed.

    Faces counted per connected piece, so the criterion is
    ``V - E + F = 2 * (number of connected components of the graph)``.
    Crossingless loops add one face and one edge each, canceling out.
    """
    if not d.crossings:
        return True
    mate = _mates(d.crossings)
    seen: set[Dart] = set()
    orbit_count = 0
    for start in list(mate):
        if start in seen:
            continue
        orbit_count += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            ci, s = mate[cur]
            cur = (ci, (s + 1) % 4)
    comp = list(range(len(d.crossings)))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for (ci, _s), (cj, _t) in mate.items():
        ri, rj = find(ci), find(cj)
        if ri != rj:
            comp[ri] = rj
    pieces = len({find(i) for i in range(len(d.crossings))})
    v = len(d.crossings)
    e = len(mate) // 2
    return v - e + orbit_count == 2 * pieces


# ---------------------------------------------------------------------------
# dual graph: BFS tree and shortest paths


@dataclass(frozen=True)
class DualPath:
    """Faces from a start face out to the outer face, with the crossed edges.

    ``edges[i]`` is the arc crossed between ``faces[i]`` and ``faces[i+1]``;
    the value ``None`` stands for crossing the front loop C.
    """

    faces: tuple[int, ...]
    edges: tuple[Optional[int], ...]


def _dual_adjacency(g: PlanarGraph4V) -> dict:
    adj: dict[int, list[tuple[int, Optional[int]]]] = {f.index: [] for f in g.faces}
    for arc in sorted(g.edge_ends):
        f1, f2 = g.edge_faces(arc)
        adj[f1].append((f2, arc))
        adj[f2].append((f1, arc))
    if g.annulus_face is not None:
        adj[g.annulus_face].append((g.outer_face, FRONT_LOOP))
        adj[g.outer_face].append((g.annulus_face, FRONT_LOOP))
    return adj


def dual_bfs_tree(g: PlanarGraph4V) -> tuple[dict, dict, dict]:
    """BFS tree of the dual rooted at the outer face.

    Returns (parent, port, depth); ``port[f]`` is the arc crossed from f to
    its parent (None = the front loop).  Parents are the smallest-index
    neighbor one level up and ports the smallest arc realizing it, so the
    tree is deterministic.
    """
    adj = _dual_adjacency(g)
    depth = {g.outer_face: 0}
    order = [g.outer_face]
    qi = 0
    while qi < len(order):
        f = order[qi]
        qi += 1
        for nb, _arc in adj[f]:
            if nb not in depth:
                depth[nb] = depth[f] + 1
                order.append(nb)
    parent: dict[int, int] = {}
    port: dict[int, Optional[int]] = {}
    for f, dep in depth.items():
        if f == g.outer_face:
            continue
        cands = [
            (nb, arc) for nb, arc in adj[f] if depth.get(nb, -1) == dep - 1
        ]
        best = min(
            cands, key=lambda t: (t[0], -1 if t[1] is None else t[1])
        )
        parent[f] = best[0]
        port[f] = best[1]
    return parent, port, depth


def dual_shortest_path(g: PlanarGraph4V, from_face: int) -> DualPath:
    """Shortest dual path from a face to the outer face (BFS, smallest-index ties)."""
    parent, port, depth = dual_bfs_tree(g)
    if from_face not in depth:
        raise DomainError(f"face {from_face} not in dual graph")
    fs = [from_face]
    es: list[Optional[int]] = []
    while fs[-1] != g.outer_face:
        es.append(port[fs[-1]])
        fs.append(parent[fs[-1]])
    return DualPath(tuple(fs), tuple(es))


# ---------------------------------------------------------------------------
# maximal tree


def maximal_tree(
    g: PlanarGraph4V, restrict_to: Optional[Iterable[int]] = None
) -> tuple[int, ...]:
    """Deterministic spanning tree of the 4-valent graph.

    Grows lowest-arc-index-first, using only edges whose endpoints lie in
    ``restrict_to`` (when given) and that are not adjacent to the outer
    region (for graphs with a front loop, the annulus counts as outermost).
    """
    allowed = set(restrict_to) if restrict_to is not None else set(range(len(g.signs)))
    outermost = {g.outer_face}
    if g.annulus_face is not None:
        outermost.add(g.annulus_face)

    parent_uf = list(range(len(g.signs)))

    def find(x: int) -> int:
        while parent_uf[x] != x:
            parent_uf[x] = parent_uf[parent_uf[x]]
            x = parent_uf[x]
        return x

    chosen: list[int] = []
    for arc in sorted(g.edge_ends):
        (c1, _), (c2, _) = g.edge_ends[arc]
        if c1 not in allowed or c2 not in allowed:
            continue
        if set(g.edge_faces(arc)) & outermost:
            continue
        r1, r2 = find(c1), find(c2)
        if r1 != r2:
            parent_uf[r1] = r2
            chosen.append(arc)
    if len(chosen) != len(g.signs) - 1:
        raise NoValidTreeError(
            f"no spanning tree under constraints (got {len(chosen)} of "
            f"{len(g.signs) - 1} edges)"
        )
    return tuple(chosen)


# ---------------------------------------------------------------------------
# builders


def _sign_from_entries(over_entry: int, under_entry: int) -> int:
    return 1 if (under_entry - over_entry) % 4 == 3 else -1


class DiagramBuilder:
    """Mutable diagram assembly: fresh arcs, unification, oriented crossings."""

    def __init__(self):
        self.crossings: list[tuple[list, int]] = []
        self._next_arc = 0
        self._union: dict[int, int] = {}
        self._heads: dict[int, Dart] = {}

    def new_arc(self) -> int:
        a = self._next_arc
        self._next_arc += 1
        return a

    def add_crossing(
        self, arcs: Sequence[int], over_entry: int, under_entry: int
    ) -> int:
        """Append a crossing; entries are the slots where over/under flow in."""
        sign = _sign_from_entries(over_entry, under_entry)
        ci = len(self.crossings)
        self.crossings.append((list(arcs), sign, over_entry % 2))
        self._heads[arcs[over_entry]] = (ci, over_entry)
        self._heads[arcs[under_entry]] = (ci, under_entry)
        return ci

    def unify(self, a: int, b: int) -> None:
        ra, rb = self.resolve(a), self.resolve(b)
        if ra != rb:
            self._union[max(ra, rb)] = min(ra, rb)

    def resolve(self, a: int) -> int:
        while a in self._union:
            a = self._union[a]
        return a

    def freeze(
        self,
        comp_of_arc: dict,
        free_loops: Sequence[FreeLoop] = (),
        outer_dart: Optional[Dart] = None,
        layout: Optional[tuple] = None,
    ) -> LinkDiagram:
        crossings = tuple(
            Crossing(tuple(self.resolve(a) for a in arcs), sign, over)
            for arcs, sign, over in self.crossings
        )
        live = set()
        for c in crossings:
            live.update(c.arcs)
        comps: dict[str, set[int]] = {}
        for a, lbl in comp_of_arc.items():
            ra = self.resolve(a)
            if ra in live:
                comps.setdefault(lbl, set()).add(ra)
        heads = {}
        for a, dart in self._heads.items():
            ra = self.resolve(a)
            if ra in live:
                heads[ra] = dart
        d = LinkDiagram(
            crossings=crossings,
            components=tuple(
                (lbl, frozenset(arcs)) for lbl, arcs in sorted(comps.items())
            ),
            free_loops=tuple(free_loops),
            outer_dart=outer_dart,
            heads=heads,
            layout=layout,
        )
        if crossings:
            validate_diagram(d)
        return d


def _strand_component_names(b: BraidWord) -> dict:
    """Closure component name per strand position: the least position in its cycle."""
    perm = permutation_of(b)
    names = {}
    for cyc in perm.cycles():
        lbl = f"s{min(cyc)}"
        for p in cyc:
            names[p] = lbl
    return names


def closure_diagram(b: BraidWord) -> LinkDiagram:
    """Braid closure: one crossing per letter, crossing signs equal letter signs.

    Layout: strands run down the page at positions 1..n, the return arcs
    nest around the right-hand side with position 1 outermost, so the
    unbounded region lies to the left of the leftmost used strand.
    """
    bld = DiagramBuilder()
    names = _strand_component_names(b)
    top = {p: bld.new_arc() for p in range(1, b.strands + 1)}
    cur = dict(top)
    comp_of_arc: dict[int, str] = {}
    used = {abs(e) for e in b.letters}

    strand_at = {p: p for p in range(1, b.strands + 1)}
    for e in b.letters:
        i = abs(e)
        left_in, right_in = cur[i], cur[i + 1]
        left_out, right_out = bld.new_arc(), bld.new_arc()
        # slots ccw: (NE, NW, SW, SE) = (right_in, left_in, left_out, right_out)
        # +i: over-strand NW->SE (enters slot 1); -i: over NE->SW (enters slot 0)
        if e > 0:
            over_entry, under_entry = 1, 0
        else:
            over_entry, under_entry = 0, 1
        bld.add_crossing((right_in, left_in, left_out, right_out),
                         over_entry, under_entry)
        for a, p in ((left_in, i), (right_in, i + 1)):
            comp_of_arc[a] = names[strand_at[p]]
        comp_of_arc[right_out] = names[strand_at[i]]
        comp_of_arc[left_out] = names[strand_at[i + 1]]
        strand_at[i], strand_at[i + 1] = strand_at[i + 1], strand_at[i]
        cur[i], cur[i + 1] = left_out, right_out

    free = []
    for p in range(1, b.strands + 1):
        touched = p in used or (p - 1) in used
        if touched:
            bld.unify(cur[p], top[p])
            comp_of_arc.setdefault(top[p], names[p])
        else:
            free.append(FreeLoop(component=names[p], encircles_all=(p == 1)))

    outer_dart = None
    if b.letters:
        # face west of the first crossing on the leftmost used strand is
        # unbounded; it is walked by the dart (crossing, SW slot) under the
        # "face on the right of travel" rule.
        p_min = min(used)
        first_ci = next(t for t, e in enumerate(b.letters) if abs(e) == p_min)
        outer_dart = (first_ci, 2)
    return bld.freeze(
        comp_of_arc,
        free_loops=free,
        outer_dart=outer_dart,
        layout=("closure", b),
    )


def braided_link(b: BraidWord) -> LinkDiagram:
    """Closure plus the braid axis: an unknot encircling all n strands.

    The axis contributes 2n crossings: its front arc passes over every
    strand and its back arc under every strand, so it links each strand
    once, as in the braided-link picture.
    """
    bld = DiagramBuilder()
    names = _strand_component_names(b)
    comp_of_arc: dict[int, str] = {}
    n = b.strands

    top = {p: bld.new_arc() for p in range(1, n + 1)}
    axis_cur = bld.new_arc()
    axis_first = axis_cur
    below_over = {}
    # over-pass, axis travels east across the strand tops
    for p in range(1, n + 1):
        out_strand = bld.new_arc()
        out_axis = bld.new_arc()
        # slots ccw: (N, W, S, E) = (strand_in, axis_in, strand_out, axis_out)
        bld.add_crossing((top[p], axis_cur, out_strand, out_axis),
                         over_entry=1, under_entry=0)
        comp_of_arc[top[p]] = names[p]
        comp_of_arc[out_strand] = names[p]
        comp_of_arc[axis_cur] = "axis"
        comp_of_arc[out_axis] = "axis"
        below_over[p] = out_strand
        axis_cur = out_axis
    # under-pass, axis travels back west below
    below_under = {}
    for p in range(n, 0, -1):
        out_strand = bld.new_arc()
        out_axis = bld.new_arc()
        # slots ccw: (N, W, S, E) = (strand_in, axis_out, strand_out, axis_in)
        bld.add_crossing((below_over[p], out_axis, out_strand, axis_cur),
                         over_entry=0, under_entry=3)
        comp_of_arc[out_strand] = names[p]
        comp_of_arc[out_axis] = "axis"
        below_under[p] = out_strand
        axis_cur = out_axis
    bld.unify(axis_cur, axis_first)

    cur = dict(below_under)
    strand_at = {p: p for p in range(1, n + 1)}
    for e in b.letters:
        i = abs(e)
        left_in, right_in = cur[i], cur[i + 1]
        left_out, right_out = bld.new_arc(), bld.new_arc()
        if e > 0:
            over_entry, under_entry = 1, 0
        else:
            over_entry, under_entry = 0, 1
        bld.add_crossing((right_in, left_in, left_out, right_out),
                         over_entry, under_entry)
        comp_of_arc[right_out] = names[strand_at[i]]
        comp_of_arc[left_out] = names[strand_at[i + 1]]
        strand_at[i], strand_at[i + 1] = strand_at[i + 1], strand_at[i]
        cur[i], cur[i + 1] = left_out, right_out
    for p in range(1, n + 1):
        bld.unify(cur[p], top[p])

    # unbounded region touches the first axis crossing between its N and W
    # slots (outside the axis's closing loop); dart rule gives (0, 1).
    return bld.freeze(
        comp_of_arc,
        outer_dart=(0, 1),
        layout=("braided", b),
    )


def plat_diagram(b: BraidWord) -> LinkDiagram:
    """Plat closure of a 2-strand word: a twist region capped above and below.

    Strand orientation is serpentine (down the left column, up the right),
    so every positive letter yields a sign -1 clasp crossing.
    """
    if b.strands != 2:
        raise DomainError("plat closure implemented for 2-strand words only")
    if not b.letters:
        raise EmptyDiagramError("plat of the empty word has no crossings")
    bld = DiagramBuilder()
    cup = bld.new_arc()
    cur = {1: cup, 2: cup}
    # column flow: col1 down, col2 up above the first crossing; flows swap
    # columns at each crossing.
    down_col = 1
    for e in b.letters:
        if abs(e) != 1:
            raise DomainError("2-strand plat uses only sigma_1")
        left_in, right_in = cur[1], cur[2]
        left_out, right_out = bld.new_arc(), bld.new_arc()
        # the down-flow strand enters at a top slot and exits diagonally; the
        # up-flow strand enters at the bottom slot of the other diagonal:
        # (down, up) entries are (NW, SW) = (1, 2) or (NE, SE) = (0, 3).
        down_entry = 1 if down_col == 1 else 0
        up_entry = 2 if down_col == 1 else 3
        # over diagonal is (1,3) for a positive letter, (0,2) for negative
        if e > 0:
            over_entry = down_entry if down_entry == 1 else up_entry
        else:
            over_entry = down_entry if down_entry == 0 else up_entry
        under_entry = up_entry if over_entry == down_entry else down_entry
        bld.add_crossing((right_in, left_in, left_out, right_out),
                         over_entry, under_entry)
        cur[1], cur[2] = left_out, right_out
        down_col = 2 if down_col == 1 else 1
    bld.unify(cur[1], cur[2])

    comp_of_arc = {}
    for arcs, _sign, _over in bld.crossings:
        for a in arcs:
            comp_of_arc[a] = "s1"
    # the region west of the first crossing is unbounded (nothing wraps left)
    return bld.freeze(
        comp_of_arc,
        outer_dart=(0, 2),
        layout=("plat", b),
    )


# ---------------------------------------------------------------------------
# PD text export / import


def pd_export(d: LinkDiagram) -> str:
    """Text PD code: one ``X[a,b,c,d,s]`` per crossing plus ``U[j]`` per free loop.

    Arcs are renumbered 1..2V in first-appearance order.  Slots are listed
    counterclockwise, rotated so that the under strand occupies the first
    and third slots; the over strand is (b, d).
    """
    number: dict[int, int] = {}

    def num(a: int) -> int:
        if a not in number:
            number[a] = len(number) + 1
        return number[a]

    parts = []
    for c in d.crossings:
        arcs = c.arcs if c.over_diag == 1 else c.arcs[1:] + c.arcs[:1]
        a, b, cc, dd = (num(x) for x in arcs)
        s = "+" if c.sign > 0 else "-"
        parts.append(f"X[{a},{b},{cc},{dd},{s}]")
    for j, _fl in enumerate(d.free_loops, start=1):
        parts.append(f"U[{j}]")
    return " ".join(parts)


_X_RE = re.compile(r"X\[(\d+),(\d+),(\d+),(\d+),([+-])\]")
_U_RE = re.compile(r"U\[(\d+)\]")


def pd_import(text: str) -> LinkDiagram:
    """Parse the PD export format back into a diagram (components recomputed)."""
    crossings = []
    free = []
    for tok in text.split():
        m = _X_RE.fullmatch(tok)
        if m:
            a, b, c, d = (int(m.group(i)) for i in range(1, 5))
            sign = 1 if m.group(5) == "+" else -1
            crossings.append(Crossing((a, b, c, d), sign))
            continue
        m = _U_RE.fullmatch(tok)
        if m:
            free.append(FreeLoop(component=f"u{m.group(1)}"))
            continue
        raise DomainError(f"bad PD token {tok!r}")

    uf: dict[int, int] = {}

    def find(a: int) -> int:
        uf.setdefault(a, a)
        while uf[a] != a:
            uf[a] = uf[uf[a]]
            a = uf[a]
        return a

    def join(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            uf[max(ra, rb)] = min(ra, rb)

    for c in crossings:
        a0, a1, a2, a3 = c.arcs
        join(a1, a3)
        join(a0, a2)
    comp_of_arc = {}
    for c in crossings:
        for a in c.arcs:
            comp_of_arc[a] = f"s{find(a)}"
    comps: dict[str, set[int]] = {}
    for a, lbl in comp_of_arc.items():
        comps.setdefault(lbl, set()).add(a)
    return LinkDiagram(
        crossings=tuple(crossings),
        components=tuple((lbl, frozenset(arcs)) for lbl, arcs in sorted(comps.items())),
        free_loops=tuple(free),
    )


# ---------------------------------------------------------------------------
# component surgery and canonical forms


def remove_components(d: LinkDiagram, labels: Iterable[str]) -> LinkDiagram:
    """Delete components; their crossings dissolve and cut strands re-fuse."""
    drop = set(labels)
    comp = d.component_of_arc()
    uf: dict[int, int] = {}

    def find(a: int) -> int:
        uf.setdefault(a, a)
        while uf[a] != a:
            uf[a] = uf[uf[a]]
            a = uf[a]
        return a

    def join(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            uf[max(ra, rb)] = min(ra, rb)

    kept = []
    for c in d.crossings:
        a0, a1, a2, a3 = c.arcs
        k0 = comp[a0] not in drop
        k1 = comp[a1] not in drop
        if k0 and k1:
            kept.append(c)
            continue
        if k1:
            join(a1, a3)
        if k0:
            join(a0, a2)
    crossings = tuple(Crossing(tuple(find(a) for a in c.arcs), c.sign,
                              c.over_diag) for c in kept)
    live = set()
    for c in crossings:
        live.update(c.arcs)
    comps: dict[str, set[int]] = {}
    for lbl, arcs in d.components:
        if lbl in drop:
            continue
        merged = {find(a) for a in arcs} & live
        if merged:
            comps.setdefault(lbl, set()).update(merged)
    free = [fl for fl in d.free_loops if fl.component not in drop]
    for lbl, _arcs in d.components:
        if lbl in drop or lbl in comps:
            continue
        free.append(FreeLoop(component=lbl))
    return LinkDiagram(
        crossings=crossings,
        components=tuple((lbl, frozenset(arcs)) for lbl, arcs in sorted(comps.items())),
        free_loops=tuple(free),
    )


def canonical_pd(d: LinkDiagram) -> str:
    """Canonical string for compare-as-labeled-PD-multiset checks.

    Tries every crossing and rotation as traversal seed, renumbers arcs by
    discovery, and keeps the lexicographically least code.  Fine for the
    small diagrams used in tests.
    """
    if not d.crossings:
        return f"U*{len(d.free_loops)}"
    best: Optional[str] = None
    n = len(d.crossings)
    base = [(c.arcs, c.sign, c.over_diag) for c in d.crossings]
    where: dict[int, list[int]] = {}
    for ci, (arcs, _s, _o) in enumerate(base):
        for a in arcs:
            where.setdefault(a, []).append(ci)
    for seed in range(n):
        for rot in range(4):
            names: dict[int, int] = {}

            def num(a: int) -> int:
                if a not in names:
                    names[a] = len(names) + 1
                return names[a]

            order: dict[int, int] = {seed: 0}
            q = deque([(seed, rot)])
            seq = []
            while q:
                ci, r = q.popleft()
                arcs, s, o = base[ci]
                rolled = arcs[r:] + arcs[:r]
                seq.append((tuple(num(a) for a in rolled), s,
                            (o - r) % 2))
                for a in rolled:
                    for cj in where[a]:
                        if cj not in order:
                            order[cj] = len(order)
                            q.append((cj, 0))
            code = ";".join(f"{arcs}{'+' if s > 0 else '-'}{o}"
                            for arcs, s, o in seq)
            if best is None or code < best:
                best = code
    return f"{best}|U*{len(d.free_loops)}"


def linking_number(d: LinkDiagram, comp_a: str, comp_b: str) -> int:
    """Linking number of two components from signed crossings (needs heads)."""
    if comp_a == comp_b:
        raise DomainError("linking number needs two distinct components")
    comp = d.component_of_arc()
    total = 0
    for c in d.crossings:
        labels = {comp[a] for a in c.arcs}
        if labels == {comp_a, comp_b}:
            total += c.sign
    if total % 2 != 0:
        raise DomainError("odd signed crossing count between two components")
    return total // 2


def pd_spherogram(d: LinkDiagram) -> list:
    """PD code in the convention of KnotTheory-style consumers.

    Each crossing is a 4-tuple of arc numbers, counterclockwise starting
    from the *incoming* under strand.  Components are oriented by a
    deterministic walk, so the result is self-consistent regardless of
    how the diagram was produced.  Crossingless loops cannot be encoded
    and raise.
    """
    if d.free_loops:
        raise DomainError("spherogram PD cannot encode crossingless loops")
    mate = _mates(d.crossings)
    # orient components: walk through-strands, record the flow-in end of
    # every arc
    entry: dict[int, Dart] = {}
    visited: set[Dart] = set()
    for ci in range(len(d.crossings)):
        for s in range(4):
            start = (ci, s)
            if start in visited:
                continue
            cur = start
            while cur not in visited:
                visited.add(cur)
                arc = d.crossings[cur[0]].arcs[cur[1]]
                nxt = mate[cur]            # arc flows into nxt
                visited.add(nxt)
                entry[arc] = nxt
                cur = (nxt[0], (nxt[1] + 2) % 4)  # continue through
    number: dict[int, int] = {}

    def num(a: int) -> int:
        if a not in number:
            number[a] = len(number) + 1
        return number[a]

    out = []
    for ci, c in enumerate(d.crossings):
        under_slots = (0, 2) if c.over_diag == 1 else (1, 3)
        start = next(s for s in under_slots if entry[c.arcs[s]] == (ci, s))
        rolled = c.arcs[start:] + c.arcs[:start]
        out.append(tuple(num(a) for a in rolled))
    return out
