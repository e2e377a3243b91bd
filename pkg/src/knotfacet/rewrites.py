"""Contract-checked local and semi-local diagram moves.

Every move returns the rewritten diagram together with a MoveReceipt
recording the face-multiset delta and crossing delta; applying the
delta to the input face vector always reproduces the output face
vector, and callers (tests, pipelines) verify the stated contracts on
top of that.

Figure-defined moves are shipped as one concrete realization each:

* attach_spiral: splice the (3, 3k+1)-torus shadow into the target
  face; its annular projection has exactly 6k+2 triangles and two
  (3k+1)-gons, one of which merges into the target face.
* odd_fill: splice the (3,5)-torus shadow (ten triangles and two
  pentagons, every face odd) into an even face.
* triangle_normalize: poke one boundary edge across an adjacent one,
  cutting the target corner off as a triangle.
* bigon_expand: pinch two arms at a corner on the target face's
  boundary, creating two bigons and lengthening the face by two.
* compose_crossing_345: reroute a straight arc and the quadrilateral
  edge above it through one new crossing, trading three quadrilaterals
  for two triangles and two pentagons.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .core import (
    Diagram,
    FaceVector,
    components,
    descending_bits,
    face_of_dart,
    face_vector,
    faces,
    is_reduced,
    sigma,
    sigma_inv,
)
from .errors import (
    BadSite,
    FaceNotEven,
    FaceNotOdd,
    FaceTooSmall,
    UncoloredInput,
    ValidationError,
)
from .fixtures import torus_link

__all__ = [
    "MoveReceipt",
    "splice_tangle",
    "poke",
    "corner_pinch",
    "attach_spiral",
    "odd_fill",
    "triangle_normalize",
    "bigon_expand",
    "compose_crossing_345",
    "parallel_double",
    "band_surgery",
]


@dataclass(frozen=True)
class MoveReceipt:
    move: str
    site: dict
    removed: tuple[int, ...]  # face sizes removed, sorted
    added: tuple[int, ...]  # face sizes added, sorted
    crossings_before: int
    crossings_after: int

    @property
    def crossing_delta(self) -> int:
        return self.crossings_after - self.crossings_before

    def check_delta(self, before: FaceVector, after: FaceVector) -> bool:
        c = Counter()
        for s, n in before.items():
            c[s] += n
        for s in self.removed:
            c[s] -= 1
        for s in self.added:
            c[s] += 1
        if any(v < 0 for v in c.values()):
            return False
        return FaceVector({s: n for s, n in c.items() if n}) == after


def _receipt(move: str, site: dict, before: Diagram, after: Diagram) -> MoveReceipt:
    fb = Counter(dict(face_vector(before).items()))
    fa = Counter(dict(face_vector(after).items()))
    removed = list((fb - fa).elements())
    added = list((fa - fb).elements())
    return MoveReceipt(
        move=move,
        site=site,
        removed=tuple(sorted(removed)),
        added=tuple(sorted(added)),
        crossings_before=before.n_vertices,
        crossings_after=after.n_vertices,
    )


def _face_sizes_multiset(d: Diagram) -> Counter:
    return Counter(f.size for f in faces(d))


# ---------------------------------------------------------------------------
# splice


def splice_tangle(d: Diagram, host_dart: int, tangle: Diagram, tangle_dart: int) -> tuple[Diagram, MoveReceipt]:
    """Connected-sum a tangle diagram into the face of `host_dart`.

    host_dart identifies both the target face (the face its dart walk
    bounds) and the host edge to cut; tangle_dart plays the same role
    for the tangle's designated outer face.  The join is chosen so the
    host face absorbs the tangle's outer face (growing by its size)
    while every other host face keeps its size; the checked receipt
    enforces exactly that.
    """
    if tangle.n_vertices == 0:
        raise BadSite("tangle has no crossings")
    if (d.crossing is None) != (tangle.crossing is None):
        raise BadSite("host and tangle must both carry or both lack crossing data")
    n = d.n_darts
    host_sizes = _face_sizes_multiset(d)
    fi = face_of_dart(d)
    target_face_idx = fi[host_dart]
    target_size = faces(d)[target_face_idx].size
    t_fi = face_of_dart(tangle)
    outer_size = faces(tangle)[t_fi[tangle_dart]].size

    a = host_dart
    b = d.alpha[a]
    c = tangle_dart + n
    cc = tangle.alpha[tangle_dart] + n

    merged_bits = None
    if d.crossing is not None:
        merged_bits = tuple(d.crossing) + tuple(tangle.crossing)

    base_alpha = list(d.alpha) + [x + n for x in tangle.alpha]
    expected = Counter(host_sizes)
    expected[target_size] -= 1
    if expected[target_size] == 0:
        del expected[target_size]
    for f in faces(tangle):
        if t_fi[f.boundary[0]] == t_fi[tangle_dart]:
            continue
        expected[f.size] += 1
    expected[target_size + outer_size] += 1

    for first, second in (((a, c), (b, cc)), ((a, cc), (b, c))):
        alpha = list(base_alpha)
        alpha[first[0]], alpha[first[1]] = first[1], first[0]
        alpha[second[0]], alpha[second[1]] = second[1], second[0]
        try:
            out = Diagram(tuple(alpha), merged_bits, d.free_loops)
        except ValidationError:
            continue
        if _face_sizes_multiset(out) == expected:
            return out, _receipt("splice", {"host_dart": host_dart, "tangle_dart": tangle_dart}, d, out)
    raise BadSite("no join orientation realizes the face-merging splice")


# ---------------------------------------------------------------------------
# poke (finger of one boundary edge through another across their face)


def poke(d: Diagram, dart_a: int, dart_b: int, finger_over: bool = True) -> tuple[Diagram, MoveReceipt]:
    """Push the strand of dart_a's edge across dart_b's edge.

    Both darts must bound the same face F (their face walks coincide);
    the finger of edge(dart_a) travels through F and crosses edge(dart_b)
    twice, its tip poking into the face beyond.  A Reidemeister II move:
    the finger strand runs over both new crossings when finger_over.
    """
    fi = face_of_dart(d)
    if fi[dart_a] != fi[dart_b]:
        raise BadSite("poke needs two darts on one face")
    if dart_a // 2 == dart_b // 2 or d.alpha[dart_a] == dart_b or dart_a == dart_b:
        pass
    if dart_a == dart_b or d.alpha[dart_a] == dart_b:
        raise BadSite("poke needs two distinct edges")
    n = d.n_darts
    x = n  # first new vertex base: darts x+0..x+3 as (E, N, W, S)
    y = n + 4
    a = dart_a
    abar = d.alpha[dart_a]
    b = dart_b
    bbar = d.alpha[dart_b]
    alpha = list(d.alpha) + [-1] * 8

    def link(p, q):
        alpha[p] = q
        alpha[q] = p

    # x slots: 0 east (toward y along edge b), 1 north (finger toward a),
    #          2 west (toward b's vertex), 3 south (tip)
    # y slots: 0 east (toward bbar's vertex), 1 north (finger toward abar),
    #          2 west (toward x), 3 south (tip)
    link(x + 1, a)
    link(y + 1, abar)
    link(x + 2, b)
    link(y + 0, bbar)
    link(x + 0, y + 2)
    link(x + 3, y + 3)
    bits = None
    if d.crossing is not None:
        fb = 1 if finger_over else 0
        bits = tuple(d.crossing) + (fb, fb)
    out = Diagram(tuple(alpha), bits, d.free_loops)
    return out, _receipt("poke", {"dart_a": dart_a, "dart_b": dart_b}, d, out)


# ---------------------------------------------------------------------------
# corner pinch (two arms at a corner twist around each other; R2 shadow)


def corner_pinch(d: Diagram, c: int, over_first_arm: bool = True) -> tuple[Diagram, MoveReceipt]:
    """Pinch the two arms (c, sigma c) at their shared vertex.

    The arms cross twice just off the vertex; the face bounded by dart c
    (the one the walk of c traverses) gains two edges, the face on the
    far side of the pinch gains two, and two new bigons appear between
    the crossings.  A Reidemeister II move.
    """
    w = c // 4
    d1 = c
    d2 = sigma(c)
    u1 = d.alpha[d1]
    u2 = d.alpha[d2]
    if u1 // 4 == w or u2 // 4 == w:
        raise BadSite("pinch arms must lead to other vertices")
    n = d.n_darts
    x = n
    y = n + 4
    alpha = list(d.alpha) + [-1] * 8

    def link(p, q):
        alpha[p] = q
        alpha[q] = p

    # x slots (ccw): 0 = s2-out (to y, over side), 1 = s1-in (from u1),
    #                2 = s2-in (from u2), 3 = s1-out (to y, under side)
    # y slots (ccw): 0 = s1-out (to w, slot d1), 1 = s2-in (from x),
    #                2 = s1-in (from x), 3 = s2-out (to w, slot d2)
    link(x + 1, u1)
    link(x + 2, u2)
    link(x + 3, y + 2)
    link(x + 0, y + 1)
    link(y + 0, d1)
    link(y + 3, d2)
    bits = None
    if d.crossing is not None:
        # strand 1 (the c-arm strand) runs over both crossings when
        # over_first_arm: at x strand1 is slots (1,3), at y slots (0,2).
        bx = 1 if over_first_arm else 0
        by = 0 if over_first_arm else 1
        bits = tuple(d.crossing) + (bx, by)
    out = Diagram(tuple(alpha), bits, d.free_loops)
    return out, _receipt("corner_pinch", {"corner_dart": c}, d, out)


# ---------------------------------------------------------------------------
# theorem moves


def _face_dart_of(d: Diagram, face: "int | object") -> int:
    """Accept a Face, a face index, or a dart; return a dart on the face."""
    from .core import Face

    if isinstance(face, Face):
        return face.boundary[0]
    fs = faces(d)
    if isinstance(face, int) and 0 <= face < len(fs):
        return fs[face].boundary[0]
    raise BadSite(f"no such face: {face!r}")


def attach_spiral(d: Diagram, face, k: int = 1) -> tuple[Diagram, MoveReceipt]:
    """Attach the trivial spiral tangle with parameter k >= 1 inside the
    given face: exactly 6k+2 new triangles, one new (3k+1)-gon, and the
    face itself grows by exactly 3k+1; no other face changes."""
    if k < 1:
        raise BadSite("k must be >= 1")
    host_dart = _face_dart_of(d, face)
    q = 3 * k + 1
    tangle = torus_link(3, q).forget_crossings()
    if d.crossing is not None:
        tangle = Diagram(tangle.alpha, descending_bits(tangle), 0)
    t_fi = face_of_dart(tangle)
    t_faces = faces(tangle)
    outer_idx = next(i for i, f in enumerate(t_faces) if f.size == q)
    t_dart = t_faces[outer_idx].boundary[0]
    out, receipt = splice_tangle(d, host_dart, tangle, t_dart)
    return out, MoveReceipt(
        move="attach_spiral",
        site={"face_dart": host_dart, "k": k},
        removed=receipt.removed,
        added=receipt.added,
        crossings_before=receipt.crossings_before,
        crossings_after=receipt.crossings_after,
    )


def odd_fill(d: Diagram, face) -> tuple[Diagram, MoveReceipt]:
    """Subdivide an even face into odd faces only.

    Splices the (3,5)-torus shadow (all twelve faces odd) into the even
    face: the face gains five edges (turning odd) and eleven new odd
    faces appear; nothing else changes.
    """
    host_dart = _face_dart_of(d, face)
    fi = face_of_dart(d)
    size = next(f.size for f in faces(d) if fi[f.boundary[0]] == fi[host_dart])
    if size % 2 != 0:
        raise FaceNotEven(f"face has odd size {size}")
    tangle = torus_link(3, 5).forget_crossings()
    if d.crossing is not None:
        tangle = Diagram(tangle.alpha, descending_bits(tangle), 0)
    t_fi = face_of_dart(tangle)
    t_faces = faces(tangle)
    outer_idx = next(i for i, f in enumerate(t_faces) if f.size == 5)
    t_dart = t_faces[outer_idx].boundary[0]
    out, receipt = splice_tangle(d, host_dart, tangle, t_dart)
    return out, MoveReceipt(
        move="odd_fill",
        site={"face_dart": host_dart},
        removed=receipt.removed,
        added=receipt.added,
        crossings_before=receipt.crossings_before,
        crossings_after=receipt.crossings_after,
    )


def triangle_normalize(d: Diagram, face) -> tuple[Diagram, MoveReceipt]:
    """Cut a triangle off an odd face of size >= 5.

    A corner of the face is severed by poking one of its boundary edges
    across the adjacent one: the face is replaced by a triangle, an
    (s+1)-gon and a bigon, and the face beyond the poked edge gains two
    edges (its parity is preserved).
    """
    host_dart = _face_dart_of(d, face)
    fi = face_of_dart(d)
    fidx = fi[host_dart]
    f = next(f for f in faces(d) if fi[f.boundary[0]] == fidx)
    if f.size % 2 == 0:
        raise FaceNotOdd(f"face has even size {f.size}")
    if f.size < 5:
        raise FaceTooSmall("size-3 faces are a fixed point")
    # consecutive boundary darts a then b around the face walk
    a = f.boundary[0]
    b = f.boundary[1]
    out, receipt = poke(d, a, b, finger_over=True)
    return out, MoveReceipt(
        move="triangle_normalize",
        site={"face_dart": host_dart},
        removed=receipt.removed,
        added=receipt.added,
        crossings_before=receipt.crossings_before,
        crossings_after=receipt.crossings_after,
    )


def bigon_expand(d: Diagram, face) -> tuple[Diagram, MoveReceipt]:
    """Grow the face by two edges, creating two bigons and nothing else
    new; no pre-existing face shrinks (one neighbour also gains two)."""
    host_dart = _face_dart_of(d, face)
    out, receipt = corner_pinch(d, host_dart, over_first_arm=True)
    return out, MoveReceipt(
        move="bigon_expand",
        site={"face_dart": host_dart},
        removed=receipt.removed,
        added=receipt.added,
        crossings_before=receipt.crossings_before,
        crossings_after=receipt.crossings_after,
    )


def compose_crossing_345(d: Diagram, arc_dart: int, edge_dart: int, over_bit: int = 1) -> tuple[Diagram, MoveReceipt]:
    """Compose two components through one new crossing.

    arc_dart lies on a straight arc crossing a quadrilateral; edge_dart
    lies on the quadrilateral edge facing it across that quadrilateral
    (both darts bound the same face, and the neighbouring face beyond
    edge_dart is a quadrilateral too).  The arc edge and the facing edge
    are cut and rewired through a fresh crossing: the shared
    quadrilateral face splits into two triangles while the faces beyond
    either edge each gain one edge.  The two strands' components merge.
    """
    fi = face_of_dart(d)
    if fi[arc_dart] != fi[edge_dart]:
        raise BadSite("arc and edge darts must bound a common face")
    st = components(d)
    strand_of = st.strand_of_edge()
    if strand_of[min(arc_dart, d.alpha[arc_dart])] == strand_of[min(edge_dart, d.alpha[edge_dart])]:
        raise BadSite("composition needs two distinct components")
    a1 = arc_dart
    a2 = d.alpha[arc_dart]
    q1 = edge_dart
    q2 = d.alpha[edge_dart]
    n = d.n_darts
    z = n
    alpha = list(d.alpha) + [-1] * 4

    def link(p, q):
        alpha[p] = q
        alpha[q] = p

    # z slots (ccw): 0 toward q2's end, 1 toward q1's end,
    #                2 toward a1's end, 3 toward a2's end
    link(z + 1, q1)
    link(z + 0, q2)
    link(z + 2, a1)
    link(z + 3, a2)
    bits = None
    if d.crossing is not None:
        bits = tuple(d.crossing) + (over_bit,)
    out = Diagram(tuple(alpha), bits, d.free_loops)
    return out, _receipt("compose_crossing_345", {"arc_dart": arc_dart, "edge_dart": edge_dart}, d, out)


# ---------------------------------------------------------------------------
# parallel doubling and band surgery


def parallel_double(d: Diagram, coloring) -> tuple[Diagram, "object", MoveReceipt]:
    """Lay a parallel copy alongside every strand.

    The copy runs on the left of each strand's canonical orientation.
    Crossing bits follow the doubling rules: at an original-vs-copy
    crossing the copy runs under, at a copy-vs-copy crossing the gray
    strand runs under; original crossings keep their bit.  The coloring
    (required) extends edge-wise to the copy.  Output components double.
    """
    from .coloring import Coloring

    if d.crossing is None:
        raise UncoloredInput("parallel_double needs crossing data")
    if coloring is None:
        raise UncoloredInput("parallel_double needs a coloring")
    n = d.n_darts
    out_darts = _canonical_out_set(d)

    # sub-vertex ids per original vertex: 0 = orig x orig, 1 = orig x copy
    # (on the original A line), 2 = copy x orig (A' line over B),
    # 3 = copy x copy
    def sub(v: int, which: int) -> int:
        return 4 * v + which

    nv = d.n_vertices
    alpha = [-1] * (16 * nv)
    bits = [0] * (4 * nv)

    def link(p, q):
        alpha[p] = q
        alpha[q] = p

    # per vertex: local directions as darts E,N,W,S = slots 0..3 of each
    # sub-vertex; arms collected for inter-cluster wiring
    main_arm: dict[int, int] = {}
    prime_arm: dict[int, int] = {}

    for v in range(nv):
        dE = next(x for x in range(4 * v, 4 * v + 4) if x in out_darts)
        # A flows west->east leaving via dE; B leaves via dN or dS
        dN, dW, dS = sigma(dE), sigma(sigma(dE)), sigma_inv(dE)
        case_p = dN in out_darts  # B flows south->north
        v_oo = 4 * sub(v, 0)
        v_ab = 4 * sub(v, 1)
        v_pb = 4 * sub(v, 2)
        v_pp = 4 * sub(v, 3)
        E, N, W, S = 0, 1, 2, 3
        if case_p:
            link(v_oo + N, v_pb + S)
            link(v_oo + W, v_ab + E)
            link(v_ab + N, v_pp + S)
            link(v_pb + W, v_pp + E)
            main_arm[dE] = v_oo + E
            main_arm[dW] = v_ab + W
            main_arm[dN] = v_pb + N
            main_arm[dS] = v_oo + S
            prime_arm[dE] = v_pb + E
            prime_arm[dW] = v_pp + W
            prime_arm[dN] = v_pp + N
            prime_arm[dS] = v_ab + S
        else:
            link(v_oo + E, v_ab + W)
            link(v_oo + N, v_pb + S)
            link(v_ab + N, v_pp + S)
            link(v_pb + E, v_pp + W)
            main_arm[dE] = v_ab + E
            main_arm[dW] = v_oo + W
            main_arm[dN] = v_pb + N
            main_arm[dS] = v_oo + S
            prime_arm[dE] = v_pp + E
            prime_arm[dW] = v_pb + W
            prime_arm[dN] = v_pp + N
            prime_arm[dS] = v_ab + S
        # bits: horizontal strand = slots (E, W) -> bit 0; vertical -> bit 1
        orig_over_E = d.is_over(dE)
        bits[sub(v, 0)] = 0 if orig_over_E else 1
        bits[sub(v, 1)] = 0  # A over B' (copy under original)
        bits[sub(v, 2)] = 1  # B over A'
        # copy x copy: gray under, so the black one of A'/B' runs over
        a_black = coloring.color_of_dart(dE) == "black"
        bits[sub(v, 3)] = 0 if a_black else 1

    for x in range(n):
        y = d.alpha[x]
        if x < y:
            link(main_arm[x], main_arm[y])
            link(prime_arm[x], prime_arm[y])

    out = Diagram(tuple(alpha), tuple(bits), d.free_loops)

    # extend the coloring edge-wise: each new edge inherits the colour of
    # the original dart whose arm it continues; transitions double up
    new_color: dict[int, str] = {}
    for x in range(n):
        col = coloring.color_of_dart(x)
        new_color[main_arm[x]] = col
        new_color[prime_arm[x]] = col
    # intra-cluster edges: colour by the strand segment they belong to
    for x in range(16 * nv):
        if x in new_color:
            continue
        new_color[x] = None  # filled below by propagation
    _propagate_cluster_colors(out, new_color)
    transitions = []
    for e in coloring.transitions:
        x = e if isinstance(e, int) else e[0]
        y = d.alpha[x]
        transitions.append(_edge_id(out, main_arm[x], main_arm[y]))
        transitions.append(_edge_id(out, prime_arm[x], prime_arm[y]))
    new_coloring = Coloring(
        color=tuple(new_color[x] for x in range(out.n_darts)),
        transitions=tuple(sorted(transitions)),
    )
    receipt = _receipt("parallel_double", {}, d, out)
    return out, new_coloring, receipt


def _canonical_out_set(d: Diagram) -> set[int]:
    out: set[int] = set()
    seen = [False] * d.n_darts
    for x in range(d.n_darts):
        if seen[x]:
            continue
        y = x
        while not seen[y]:
            seen[y] = True
            seen[d.alpha[y]] = True
            out.add(y)
            a = d.alpha[y]
            y = 4 * (a // 4) + (a + 2) % 4
    return out


def _edge_id(d: Diagram, x: int, y: int) -> int:
    assert d.alpha[x] == y
    return min(x, y)


def _propagate_cluster_colors(d: Diagram, color: dict[int, "str | None"]) -> None:
    """Fill colours along strands: a dart with no colour copies its
    strand-neighbour's colour (transitions never sit inside clusters)."""
    changed = True
    while changed:
        changed = False
        for x in range(d.n_darts):
            if color[x] is not None:
                continue
            a = d.alpha[x]
            for cand in (color[a], color[sigma(sigma(x))], color[sigma(sigma(a))]):
                if cand is not None:
                    color[x] = cand
                    changed = True
                    break
    for x in range(d.n_darts):
        if color[x] is None:
            color[x] = "black"


def band_surgery(d: Diagram, coloring, transition_edge: int) -> tuple[Diagram, "object", MoveReceipt]:
    """Merge the twin strands of a doubled diagram along a band at a
    transition edge.  The parallel twin of the edge is found across the
    corridor quadrilateral; both edges are cut and rejoined straight
    across, cancelling the two transitions that met there."""
    from .coloring import Coloring

    e = transition_edge
    if e not in coloring.transitions:
        raise BadSite("band surgery must happen at a transition edge")
    m = e
    mbar = d.alpha[m]
    fi = face_of_dart(d)
    twin = None
    for dart in (m, mbar):
        fidx = fi[dart]
        f = next(f for f in faces(d) if fi[f.boundary[0]] == fidx)
        if f.size != 4:
            continue
        i = f.boundary.index(dart)
        opp = f.boundary[(i + 2) % 4]
        opp_edge = min(opp, d.alpha[opp])
        if opp_edge in coloring.transitions and opp_edge != e:
            twin = opp
            break
    if twin is None:
        raise BadSite("no corridor quadrilateral with a twin transition")
    p = twin
    pbar = d.alpha[p]
    # The corridor face walk contains `dart` and `opp` two steps apart;
    # the band rungs must join the facing half-edges without crossing:
    # m's side near the shared face joins p-bar's side and vice versa.
    alpha = list(d.alpha)

    def link(a, b):
        alpha[a] = b
        alpha[b] = a

    link(m, p)
    link(mbar, pbar)
    out = Diagram(tuple(alpha), d.crossing, d.free_loops)
    new_transitions = tuple(t for t in coloring.transitions if t not in (min(m, mbar), min(p, pbar)))
    new_color = list(coloring.color)
    # colours on the rejoined edges stay as they were dart-wise
    new_coloring = Coloring(color=tuple(new_color), transitions=new_transitions)
    receipt = _receipt("band_surgery", {"transition_edge": e}, d, out)
    return out, new_coloring, receipt
