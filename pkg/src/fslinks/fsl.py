"""Fundamental-shadow-link constructions in S^3.

The central operation realizes any closed braid (every generator used,
length k) as a sublink of a link whose complement has volume ``2*k*v8``:
embed the word one strand up so the new front strand closes to an
outermost circle ``C``, project to a 4-valent graph, and add one unknot
per region not touching ``C``.  Each added unknot is a fiber circle
drawn as a thin oval along the shortest dual path from its region to the
unbounded one, passing once over and once under every strand it crosses
(including ``C``).

Routing several ovals through shared arcs keeps them parallel: along any
crossed arc the passes sit in nested parenthesis order (all outbound
lanes, then the return lanes reversed), ordered by a DFS of the dual BFS
tree that follows each face's boundary walk.  The resulting rotation
system is planar by construction; the Euler checks in the test suite
guard every generated diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from fslinks.braid import BraidWord, generators_all_present
from fslinks.constants import V8
from fslinks.diagram import (
    Crossing,
    FreeLoop,
    LinkDiagram,
    PlanarGraph4V,
    _sign_from_entries,
    closure_diagram,
    dual_bfs_tree,
    euler_check,
    plat_diagram,
    project_to_graph,
    validate_diagram,
)
from fslinks.errors import DomainError, MissingGeneratorError

#: path key standing for "the crossing of the front loop C"
FRONT_KEY = "C"


@dataclass(frozen=True)
class AugmentedLink:
    """A braid closure realized as a sublink of a fixed-volume link."""

    base: BraidWord
    diagram: LinkDiagram
    axis_component: str
    added_components: tuple[str, ...]
    complexity: int
    predicted_volume: float


@dataclass(frozen=True)
class SurgeryPresentation:
    """Link diagram with per-component framing tags (zero / drilled / plain)."""

    diagram: LinkDiagram
    framing: Mapping[str, str]
    complexity: int

    def zero_framed(self) -> tuple[str, ...]:
        return tuple(sorted(c for c, f in self.framing.items() if f == "zero"))


@dataclass(frozen=True)
class FamilyLink:
    family: str
    k: int
    diagram: LinkDiagram
    expected_crossings: int
    expected_components: int
    predicted_volume: float


# ---------------------------------------------------------------------------
# the oval router


def _face_cut_walk(g: PlanarGraph4V, d: LinkDiagram, face: int,
                   exit_arc: Optional[int]) -> list:
    """Boundary darts of a face, rotated to start just after the exit port."""
    darts = list(g.faces[face].darts)
    if exit_arc is None or not darts:
        return darts
    side = next(dd for dd in g.edge_ends[exit_arc]
                if g.dart_face.get(dd) == face)
    i = darts.index(side)
    return darts[i + 1:] + darts[:i + 1]


class _Router:
    """One-shot insertion of the fiber ovals into a front-looped diagram."""

    def __init__(self, d: LinkDiagram, g: PlanarGraph4V, label_prefix: str):
        self.d = d
        self.g = g
        self.crossings = [[list(c.arcs), c.sign, c.over_diag]
                          for c in d.crossings]
        self.heads = dict(d.heads)
        self.comp = dict(d.component_of_arc())
        self._next = max((a for c in d.crossings for a in c.arcs), default=-1) + 1
        self.parent, self.port, _depth = dual_bfs_tree(g)
        self.targets = [f.index for f in g.faces if not f.touches_front]
        self.label_prefix = label_prefix
        #: per (curve, port key): [out_lam_in, out_lam_out, back_lam_in, back_lam_out]
        self.lane_ends: dict = {}
        self.outer_dart = None
        self.front_label = next(
            fl.component for fl in d.free_loops if fl.encircles_all
        )

    def fresh(self) -> int:
        a = self._next
        self._next += 1
        return a

    # -- pass sequences ------------------------------------------------------
    #
    # seq(f) lists the (curve, outbound) passes through f's exit port from
    # the E1 end of the port arc.  Since a parent face traverses each child
    # port from its E1 end too, the feet a face sees along its boundary walk
    # appear in exactly this order, and copying it onto the exit port keeps
    # all lane chords inside the face nested.  Every oval's two lanes stay
    # adjacent the whole way (the oval is a thin neighborhood of its path).

    def _sequences(self) -> list:
        g = self.g
        children: dict[int, list[int]] = {f.index: [] for f in g.faces}
        for f in self.targets + [g.annulus_face]:
            if f in self.parent:
                children[self.parent[f]].append(f)
        for f, kids in children.items():
            walk = _face_cut_walk(g, self.d, f, self.port.get(f))
            pos = {}
            for i, (ci, s) in enumerate(walk):
                a = self.d.crossings[ci].arcs[s]
                pos.setdefault(a, i)
            kids.sort(key=lambda ch: (pos.get(self.port[ch], len(walk)), ch))

        self.seq: dict[int, list] = {}

        def build(f: int) -> list:
            out = []
            for ch in children[f]:
                out.extend(build(ch))
            if f in self.targets:
                out.append((f, True))
                out.append((f, False))
            self.seq[f] = out
            return out

        passes = build(g.annulus_face)
        order = [c for c, outbound in passes if outbound]
        if set(order) != set(self.targets):
            raise DomainError("routing tree failed to reach every region")
        return order

    # -- stations ----------------------------------------------------------

    def _station(self, seq_in: int, e_out: int, curve: int, outbound: bool,
                 flow_s: int, strand_label: str, curve_label: str) -> int:
        """Append one oval/strand crossing; returns the crossing index."""
        lam_in, lam_out = self.fresh(), self.fresh()
        if outbound:
            arcs = (seq_in, lam_out, e_out, lam_in)
            over_entry = 3  # oval enters at W, passing over
            under_entry = 0 if flow_s > 0 else 2
        else:
            arcs = (seq_in, lam_in, e_out, lam_out)
            over_entry = 0 if flow_s > 0 else 2  # strand passes over
            under_entry = 1
        ci = len(self.crossings)
        self.crossings.append([list(arcs),
                               _sign_from_entries(over_entry, under_entry),
                               over_entry % 2])
        self.heads[arcs[over_entry]] = (ci, over_entry)
        self.heads[arcs[under_entry]] = (ci, under_entry)
        for a in (seq_in, e_out):
            self.comp[a] = strand_label
        key = (curve, self._current_key)
        ends = self.lane_ends.setdefault(key, [None, None, None, None])
        if outbound:
            ends[0], ends[1] = lam_in, lam_out
        else:
            ends[2], ends[3] = lam_in, lam_out
        for a in (lam_in, lam_out):
            self.comp[a] = curve_label
        return ci

    def _process_port(self, arc: int, child_face: int,
                      labels: Mapping[int, str]) -> None:
        passes = self.seq[child_face]
        if not passes:
            return
        self._current_key = arc
        d_f = next(dd for dd in self.g.edge_ends[arc]
                   if self.g.dart_face.get(dd) == child_face)
        e1 = next(dd for dd in self.g.edge_ends[arc] if dd != d_f)
        head = self.heads.get(arc)
        flow_s = 1 if head == d_f else -1
        strand_label = self.comp[arc]
        seq = self.fresh()
        e1_c, e1_s = e1
        self.crossings[e1_c][0][e1_s] = seq
        if head == e1:
            self.heads[seq] = e1
            del self.heads[arc]
        for idx, (curve, outbound) in enumerate(passes):
            e_out = arc if idx == len(passes) - 1 else self.fresh()
            self._station(seq, e_out, curve, outbound, flow_s,
                          strand_label, labels[curve])
            seq = e_out

    def _process_front(self, labels: Mapping[int, str]) -> None:
        passes = self.seq[self.g.annulus_face]
        self._current_key = FRONT_KEY
        first = self.fresh()
        seq = first
        for idx, (curve, outbound) in enumerate(passes):
            e_out = self.fresh()
            ci = self._station(seq, e_out, curve, outbound, flow_s=1,
                               strand_label="C", curve_label=labels[curve])
            if self.outer_dart is None and outbound:
                # sector between the arriving gap arc and the departing
                # U-turn lane is the new unbounded region
                self.outer_dart = (ci, 1)
            seq = e_out
        # close the front circle: the last outgoing segment is the gap arc
        for cr in self.crossings:
            cr[0] = [first if a == seq else a for a in cr[0]]
        if seq in self.heads:
            self.heads[first] = self.heads.pop(seq)
        self.comp.pop(seq, None)

    # -- lane wiring ---------------------------------------------------------

    def _wire_lanes(self) -> dict:
        sub: dict[int, int] = {}

        def find(a: int) -> int:
            while a in sub:
                a = sub[a]
            return a

        def unify(a: int, b: int) -> None:
            ra, rb = find(a), find(b)
            if ra != rb:
                sub[max(ra, rb)] = min(ra, rb)

        for t in self.targets:
            keys = []
            f = t
            while f != self.g.outer_face:
                keys.append(FRONT_KEY if self.parent[f] == self.g.outer_face
                            else self.port[f])
                f = self.parent[f]
            ends = {k: self.lane_ends[(t, k)] for k in keys}
            for j in range(len(keys) - 1):
                unify(ends[keys[j]][1], ends[keys[j + 1]][0])   # outbound gap
                unify(ends[keys[j + 1]][3], ends[keys[j]][2])   # return gap
            unify(ends[keys[-1]][1], ends[keys[-1]][2])         # U-turn outside
            unify(ends[keys[0]][3], ends[keys[0]][0])           # origin cap
        return {a: find(a) for a in list(sub)}

    def run(self) -> tuple[LinkDiagram, tuple[str, ...]]:
        order = self._sequences()
        labels = {t: f"{self.label_prefix}{i + 1}" for i, t in enumerate(order)}
        for f in self.targets + [self.g.annulus_face]:
            arc = self.port.get(f)
            if arc is not None:
                self._process_port(arc, f, labels)
        self._process_front(labels)
        sub = self._wire_lanes()

        def res(a: int) -> int:
            while a in sub:
                a = sub[a]
            return a

        crossings = tuple(
            Crossing(tuple(res(a) for a in arcs), sign, over)
            for arcs, sign, over in self.crossings
        )
        live = set()
        for c in crossings:
            live.update(c.arcs)
        comps: dict[str, set[int]] = {}
        for a, lbl in self.comp.items():
            ra = res(a)
            if ra in live:
                if lbl == self.front_label:
                    lbl = "C"
                comps.setdefault(lbl, set()).add(ra)
        heads = {}
        for a, dart in self.heads.items():
            ra = res(a)
            if ra in live:
                heads[ra] = dart
        out = LinkDiagram(
            crossings=crossings,
            components=tuple(
                (lbl, frozenset(arcs)) for lbl, arcs in sorted(comps.items())
            ),
            free_loops=tuple(fl for fl in self.d.free_loops
                             if not fl.encircles_all),
            outer_dart=self.outer_dart,
            heads=heads,
            layout=None,
        )
        validate_diagram(out)
        return out, tuple(labels[t] for t in order)


def _route_circles(d: LinkDiagram, g: PlanarGraph4V,
                   label_prefix: str = "R") -> tuple[LinkDiagram, tuple[str, ...]]:
    if g.annulus_face is None:
        raise DomainError("routing needs a front loop around the diagram")
    return _Router(d, g, label_prefix).run()


# ---------------------------------------------------------------------------
# the augmentation


def augment_to_fsl(b: BraidWord) -> AugmentedLink:
    """Embed a braid closure as a sublink of a link of volume 2k*v8.

    The word must use every generator of its group (otherwise the
    projection graph is disconnected) and have length k >= 1.
    """
    if not generators_all_present(b):
        raise MissingGeneratorError(
            "every generator must appear at least once; the projection "
            "graph would be disconnected"
        )
    k = b.length()
    if k < 1:
        raise DomainError("augmentation needs a nonempty word")
    shifted = BraidWord(
        b.strands + 1,
        tuple(e + 1 if e > 0 else e - 1 for e in b.letters),
    )
    d = closure_diagram(shifted)
    g = project_to_graph(d)
    if not g.euler_verify:
        raise DomainError("projection failed the Euler check")
    aug, added = _route_circles(d, g)
    return AugmentedLink(
        base=b,
        diagram=aug,
        axis_component="C",
        added_components=added,
        complexity=k,
        predicted_volume=2 * k * V8,
    )


def fsl_surgery_presentation(b: BraidWord) -> SurgeryPresentation:
    """Same diagram as the augmentation, with the added circles 0-framed."""
    aug = augment_to_fsl(b)
    framing = {
        lbl: ("zero" if lbl in aug.added_components else "plain")
        for lbl in aug.diagram.component_labels()
    }
    return SurgeryPresentation(
        diagram=aug.diagram,
        framing=framing,
        complexity=aug.complexity,
    )


# ---------------------------------------------------------------------------
# link families L_k, J_k, K_k


def _add_front_loop(d: LinkDiagram) -> LinkDiagram:
    """Place an encircling front loop around a diagram with no free loops."""
    if any(fl.encircles_all for fl in d.free_loops):
        raise DomainError("diagram already has a front loop")
    return LinkDiagram(
        crossings=d.crossings,
        components=d.components,
        free_loops=d.free_loops + (FreeLoop(component="C", encircles_all=True),),
        outer_dart=d.outer_dart,
        heads=d.heads,
        layout=d.layout,
    )


def _ends(d: LinkDiagram, arc: int) -> tuple:
    out = []
    for ci, c in enumerate(d.crossings):
        for s in range(4):
            if c.arcs[s] == arc:
                out.append((ci, s))
    return tuple(out)


def _fuse_front_into(d: LinkDiagram, target_label: str) -> LinkDiagram:
    """Band-sum the component C into another component along a shared face.

    The band lies inside a face bordered by both components, so no new
    crossings appear and the component count drops by one.  Both end
    pairings of the band are tried; the planar one (Euler check) is kept.
    """
    g = project_to_graph(d)
    comp = d.component_of_arc()
    pick = None
    for f in sorted(g.faces, key=lambda fc: fc.index):
        c_arcs = sorted(a for a in f.arcs if comp.get(a) == "C")
        t_arcs = sorted(a for a in f.arcs if comp.get(a) == target_label)
        if c_arcs and t_arcs:
            pick = (c_arcs[0], t_arcs[0])
            break
    if pick is None:
        raise DomainError("no face borders both C and the fuse target")
    arc_c, arc_t = pick

    def rewire(swap: bool) -> LinkDiagram:
        ends_c = list(_ends(d, arc_c))
        ends_t = list(_ends(d, arc_t))
        if swap:
            ends_t.reverse()
        base = max(d.arcs())
        new1, new2 = base + 1, base + 2
        assign = {ends_c[0]: new1, ends_t[1]: new1,
                  ends_t[0]: new2, ends_c[1]: new2}
        crossings = tuple(
            Crossing(
                tuple(assign.get((ci, s), c.arcs[s]) for s in range(4)),
                c.sign,
                c.over_diag,
            )
            for ci, c in enumerate(d.crossings)
        )
        comps: dict[str, set[int]] = {
            lbl: set(arcs) for lbl, arcs in d.components
            if lbl not in ("C", target_label)
        }
        fused = set()
        for lbl in ("C", target_label):
            fused |= {a for a in dict(d.components)[lbl]
                      if a not in (arc_c, arc_t)}
        fused |= {new1, new2}
        comps[target_label] = fused
        return LinkDiagram(
            crossings=crossings,
            components=tuple(
                (lbl, frozenset(arcs)) for lbl, arcs in sorted(comps.items())
            ),
            free_loops=d.free_loops,
            outer_dart=d.outer_dart,
            heads={},
            layout=None,
        )

    for swap in (False, True):
        cand = rewire(swap)
        try:
            validate_diagram(cand)
        except DomainError:
            continue
        if euler_check(cand):
            return cand
    raise DomainError("band fusion failed to produce a planar diagram")


def _add_kink(d: LinkDiagram, label: str) -> LinkDiagram:
    """Reidemeister-I kink on one arc of a component (adds one +1 crossing)."""
    arc = min(dict(d.components)[label])
    (c1, s1), _other = _ends(d, arc)
    base = max(d.arcs())
    new_in, loop = base + 1, base + 2
    crossings = [list(c.arcs) for c in d.crossings]
    crossings[c1][s1] = new_in
    out = [Crossing(tuple(arcs), c.sign, c.over_diag)
           for arcs, c in zip(crossings, d.crossings)]
    out.append(Crossing((new_in, loop, loop, arc),
                        _sign_from_entries(1, 0), 1))
    comps = {lbl: set(a) for lbl, a in d.components}
    comps[label] |= {new_in, loop}
    dd = LinkDiagram(
        crossings=tuple(out),
        components=tuple((lbl, frozenset(a)) for lbl, a in sorted(comps.items())),
        free_loops=d.free_loops,
        outer_dart=None,
        heads={},
        layout=None,
    )
    validate_diagram(dd)
    return dd


def make_family(family: str, k: int) -> FamilyLink:
    """Parametric diagram templates for the three link families.

    Counts per the family contract (all with predicted volume 2k*v8):

    * ``K``: 5k+4 crossings, k+3 components -- the augmented 2-plat, a
      direct shadow realization;
    * ``J``: 5k+5 crossings, k+2 components;
    * ``L``: 5k+6 crossings, k+2 components for odd k and k+3 for even.
    """
    if family not in ("L", "J", "K"):
        raise DomainError(f"unknown family {family!r}")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    word = BraidWord(2, (1,) * k)
    if family == "K":
        d = _add_front_loop(plat_diagram(word))
        out, _added = _route_circles(d, project_to_graph(d))
        expected = (5 * k + 4, k + 3)
    elif family == "J":
        d = _add_front_loop(plat_diagram(word))
        aug, added = _route_circles(d, project_to_graph(d))
        out = _add_kink(_fuse_front_into(aug, "s1"), added[0])
        expected = (5 * k + 5, k + 2)
    else:
        d = _add_front_loop(closure_diagram(word))
        aug, _added = _route_circles(d, project_to_graph(d))
        out = _fuse_front_into(aug, "s1")
        expected = (5 * k + 6, (k + 2) if k % 2 == 1 else (k + 3))
    got = (out.crossing_count(), out.component_count())
    if got != expected:
        raise DomainError(
            f"family {family}_{k} template produced {got}; contract is {expected}"
        )
    if not euler_check(out):
        raise DomainError(f"family {family}_{k} template is not planar")
    return FamilyLink(
        family=family,
        k=k,
        diagram=out,
        expected_crossings=expected[0],
        expected_components=expected[1],
        predicted_volume=2 * k * V8,
    )


# ---------------------------------------------------------------------------
# catalog data and count-based distinctness


#: rows of the homeomorphic-complement table for the complexity-one links
TABLE_LINKS: Mapping[str, tuple[str, ...]] = {
    "FSL1": ("L10n32",),
    "FSL2": ("L10n36",),
    "FSL3": ("L6a4", "L9n25", "L11n287", "L11n378"),
    "FSL4": ("L10n84", "L10n87"),
    "FSL5": ("L8n5", "L9n26", "L10n70", "L11n376", "L11n385"),
    "FSL6": ("L8n7", "L10n97", "L10n105", "L10n108"),
}

#: the seventeen links verified octahedral with volume 2*v8
SEVENTEEN_LINKS: tuple[str, ...] = (
    "L6a4", "L8n5", "L8n7", "L9n25", "L9n26", "L10n32", "L10n36", "L10n70",
    "L10n84", "L10n87", "L10n97", "L10n105", "L10n108", "L11n287", "L11n376",
    "L11n378", "L11n385",
)

#: complexity-one rows that coincide with the k=1 family links
FSL_FAMILY_IDENTIFICATION: Mapping[str, str] = {
    "FSL3": "L",
    "FSL5": "J",
    "FSL6": "K",
}

#: 11-crossing candidates for complexity two, undetermined
COMPLEXITY_TWO_CANDIDATES: tuple[str, ...] = ("L11n387", "L11n388")

#: determined non-matching by numerics (non-rigorous)
EXPECTED_NONMATCHING: tuple[str, ...] = ("L10n59",)


def catalog_table_links() -> Mapping[str, tuple[str, ...]]:
    """Static table: complexity-one presentation name -> matching link names."""
    return dict(TABLE_LINKS)


@dataclass(frozen=True)
class WhiteheadComparison:
    k: int
    distinct: bool
    whitehead_components: int
    max_family_components: int


def whitehead_distinct(k: int) -> WhiteheadComparison:
    """Component-count separation from the volume-(2k*v8) Whitehead chains.

    A chain of that volume needs 2k+1 components while the constructions
    here have at most k+4, so the complements differ once 2k+1 > k+4.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    w = 2 * k + 1
    m = k + 4
    return WhiteheadComparison(
        k=k, distinct=w > m, whitehead_components=w, max_family_components=m
    )
