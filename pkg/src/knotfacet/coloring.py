"""Two-colorings of projections with non-self-crossing color classes.

A coloring assigns black or gray to every dart; transitions sit at edge
midpoints (edges whose two darts disagree).  Validity means strand
continuity at every vertex, no monochromatic crossing anywhere, and
exactly two transitions per component.

two_color first searches for a direct cut of the strand (two gaps
separating every crossing's passages); when none exists it runs the
advancing-front march: the black arc grows passage by passage, and a
crossing whose other strand is already black is slid forward along the
curve, just ahead of the front, one crossing at a time.  Each slide
past a bystander crossing pays a Reidemeister-II pair against the
bystander's strand, so it is an isotopy, keeps every pre-existing
crossing bit, and never creates a monochromatic crossing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .core import Diagram, components, face_of_dart, face_vector, faces, is_reduced, sigma
from .errors import BadSite, KnotfacetError, NotAKnot, NotALink, ValidationError

__all__ = [
    "Coloring",
    "two_color",
    "color_link",
    "validate_coloring",
    "odd_faces",
]

BLACK = "black"
GRAY = "gray"


@dataclass(frozen=True)
class Coloring:
    """Dart colors plus the transition edge list (edge = least dart).

    free_loop_transitions counts transition points on crossing-free
    circles, which have no edges to attach them to.
    """

    color: tuple[str, ...]
    transitions: tuple[int, ...]
    free_loop_transitions: int = 0

    def color_of_dart(self, x: int) -> str:
        return self.color[x]

    def transition_count(self) -> int:
        return len(self.transitions) + self.free_loop_transitions

    def to_payload(self) -> dict:
        return {
            "color": list(self.color),
            "transitions": list(self.transitions),
            "free_loop_transitions": self.free_loop_transitions,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Coloring":
        return cls(
            color=tuple(payload["color"]),
            transitions=tuple(payload["transitions"]),
            free_loop_transitions=payload.get("free_loop_transitions", 0),
        )


def _strand_walks(d: Diagram) -> list[list[int]]:
    """Out-dart walks, one per strand, from each strand's least dart."""
    walks = []
    seen = [False] * d.n_darts
    for x in range(d.n_darts):
        if seen[x]:
            continue
        walk = []
        y = x
        while not seen[y]:
            seen[y] = True
            seen[d.alpha[y]] = True
            walk.append(y)
            a = d.alpha[y]
            y = 4 * (a // 4) + (a + 2) % 4
        walks.append(walk)
    return walks


def validate_coloring(d: Diagram, c: Coloring) -> bool:
    """All Coloring invariants: edge/strand consistency, bichromatic
    crossings, two transitions per component."""
    if d.n_vertices == 0:
        return c.color == () and c.free_loop_transitions == 2 * d.free_loops
    if len(c.color) != d.n_darts:
        return False
    if any(col not in (BLACK, GRAY) for col in c.color):
        return False
    # transitions are exactly the bichromatic edges
    trans = set()
    for x in range(d.n_darts):
        y = d.alpha[x]
        if x < y and c.color[x] != c.color[y]:
            trans.add(x)
    if trans != set(c.transitions):
        return False
    for v in range(d.n_vertices):
        b = 4 * v
        # strand continuity through the vertex
        if c.color[b] != c.color[b + 2] or c.color[b + 1] != c.color[b + 3]:
            return False
        # no monochromatic crossing
        if c.color[b] == c.color[b + 1]:
            return False
    # two transitions per component
    walks = _strand_walks(d)
    for walk in walks:
        count = 0
        for y in walk:
            if c.color[y] != c.color[d.alpha[y]]:
                count += 1
        if count != 2:
            return False
    if c.free_loop_transitions != 2 * d.free_loops:
        return False
    return True


def odd_faces(d: Diagram) -> list:
    return [f for f in faces(d) if f.size % 2 == 1]


def _coloring_from_cut(d: Diagram, walk: list[int], g1: int, g2: int) -> Coloring:
    """Color one knot strand black on passages g1+1..g2 (gap indices)."""
    m = len(walk)
    color = [GRAY] * d.n_darts
    black = set()
    i = (g1 + 1) % m
    while True:
        black.add(i)
        if i == g2:
            break
        i = (i + 1) % m
    for i, y in enumerate(walk):
        col = BLACK if i in black else GRAY
        color[y] = col
        color[4 * (y // 4) + (y + 2) % 4] = col
    transitions = tuple(sorted(min(walk[g], d.alpha[walk[g]]) for g in (g1, g2)))
    return Coloring(color=tuple(color), transitions=transitions, free_loop_transitions=2 * d.free_loops)


def _direct_cut(d: Diagram, walk: list[int]) -> tuple[int, int] | None:
    """Two gaps separating both passages of every crossing, if any."""
    m = len(walk)
    pos: dict[int, list[int]] = {}
    for i, y in enumerate(walk):
        pos.setdefault(y // 4, []).append(i)
    pairs = [tuple(v) for v in pos.values() if len(v) == 2]
    for g1 in range(m):
        for g2 in range(g1 + 1, m):
            # black = passages g1+1..g2
            def inside(i):
                return g1 < i <= g2

            if all(inside(p) != inside(q) for p, q in pairs):
                return g1, g2
    return None


# ---------------------------------------------------------------------------
# the advancing-front march


def _slide_crossing(d: Diagram, path_dart: int, over_pair_bit_beta_over: bool = True) -> Diagram:
    """Slide the crossing at the head of `path_dart` past the next
    crossing along the same strand.

    path_dart points along the path edge entering the obstruction v; the
    next path edge leads to the bystander w.  The obstruction keeps its
    crossing bit; up to two fresh crossings between the obstruction's
    strand and the bystander's strand appear (an R2 pair, obstruction
    strand over both).  Returns (diagram, darts of the obstruction
    strand at the fresh crossings).
    """
    ein_far = path_dart
    a_in = d.alpha[path_dart]  # path in-dart at v
    v = a_in // 4
    a_out = 4 * v + (a_in + 2) % 4
    e_far = d.alpha[a_out]  # path in-dart at w side
    w = e_far // 4
    if w == v:
        raise BadSite("cannot slide a crossing past itself")
    b_in = e_far
    b_out = 4 * w + (b_in + 2) % 4
    eout_far = d.alpha[b_out]

    # beta arms at v (the obstruction strand), gamma arms at w
    beta_n = sigma(a_in)  # one beta dart at v
    beta_s = 4 * v + (beta_n + 2) % 4
    gamma_n = sigma(b_in)
    gamma_s = 4 * w + (gamma_n + 2) % 4
    beta_n_far = d.alpha[beta_n]
    beta_s_far = d.alpha[beta_s]
    gamma_n_far = d.alpha[gamma_n]
    gamma_s_far = d.alpha[gamma_s]

    n = d.n_darts
    # When an obstruction arm connects straight to the bystander's arm
    # on the same side, the dragged edge re-arcs over the bystander with
    # no new crossing on that side; otherwise the corridor crosses the
    # bystander's arm once there.
    join_n = d.alpha[beta_n] == gamma_n
    join_s = d.alpha[beta_s] == gamma_s
    xT = n if not join_n else -1
    xB = (n if join_n else n + 4) if not join_s else -1
    extra = (0 if join_n else 4) + (0 if join_s else 4)
    alpha = list(d.alpha) + [-1] * extra

    def link(p, q):
        alpha[p] = q
        alpha[q] = p

    # After the slide, the path reads ein -> w -> mid -> v -> eout.
    # Boundary attachment darts move to new ports; boundary edges
    # joining two attachment darts resolve port-to-port.
    # Crossing block slots: the n-side block (the sigma(a_in) side) has
    # ccw slots (to-v, to-w, beta-far, gamma-far); the s-side block has
    # (to-v, gamma-far, beta-far, to-w).  Both put the obstruction
    # strand on slots (0, 2).
    ports = {a_in: b_in, b_out: a_out}
    if join_n:
        ports[beta_n] = beta_n  # rewired below as a direct v-w edge
    else:
        ports[beta_n] = xT + 2
        ports[gamma_n] = xT + 3
    if join_s:
        ports[beta_s] = beta_s
    else:
        ports[beta_s] = xB + 2
        ports[gamma_s] = xB + 1
    for x, px in ports.items():
        if (join_n and x == beta_n) or (join_s and x == beta_s):
            continue
        q = d.alpha[x]
        link(px, ports.get(q, q))
    # internal wiring
    link(b_out, a_in)  # mid edge w -> v
    if join_n:
        link(beta_n, gamma_n)  # re-arced direct edge v -> w
    else:
        link(xT + 0, beta_n)
        link(gamma_n, xT + 1)
    if join_s:
        link(beta_s, gamma_s)
    else:
        link(xB + 0, beta_s)
        link(gamma_s, xB + 3)

    bits = None
    new_beta_darts: list[int] = []
    if not join_n:
        new_beta_darts += [xT + 0, xT + 2]
    if not join_s:
        new_beta_darts += [xB + 0, xB + 2]
    if d.crossing is not None:
        bits = list(d.crossing)
        bb = 0 if over_pair_bit_beta_over else 1
        for _ in range(extra // 4):
            bits.append(bb)
        bits = tuple(bits)
    out = Diagram(tuple(alpha), bits, d.free_loops)
    return out, tuple(new_beta_darts)


def _march_two_color(d: Diagram) -> tuple[Diagram, Coloring]:
    """Run the advancing-front construction on a knot diagram."""
    cur = d
    # front_dart: the out-dart the black arc last claimed; its edge
    # carries the moving transition.  start_dart's edge carries the
    # fixed one.
    walk = _strand_walks(cur)[0]
    start_dart = walk[0]
    front_dart = walk[0]
    black_darts: set[int] = set()

    def other_passage_black(path_in: int) -> bool:
        q1 = sigma(path_in)
        v = path_in // 4
        q2 = 4 * v + (q1 + 2) % 4
        return q1 in black_darts or q2 in black_darts

    def gray_gray_exists(dd: Diagram) -> bool:
        for v in range(dd.n_vertices):
            b = 4 * v
            if all(x not in black_darts for x in (b, b + 1, b + 2, b + 3)):
                return True
        return False

    max_steps = 200 * max(4, d.n_vertices) ** 2
    steps = 0
    while gray_gray_exists(cur):
        steps += 1
        if steps > max_steps:
            raise KnotfacetError("two_color march did not converge")
        head = cur.alpha[front_dart]
        v = head // 4
        path_out = 4 * v + (head + 2) % 4
        if head == start_dart or path_out == start_dart:
            raise KnotfacetError("two_color march reached its start with gray self-crossings left")
        if other_passage_black(head):
            # Slide the block of consecutive obstructions forward,
            # farthest first, so every slide passes a gray bystander.
            chain = [front_dart]
            while True:
                if len(chain) > cur.n_darts:
                    raise KnotfacetError("two_color march: obstruction chain loops")
                h = cur.alpha[chain[-1]]
                vv = h // 4
                out = 4 * vv + (h + 2) % 4
                if h == start_dart or out == start_dart:
                    raise KnotfacetError("two_color march blocked at its start transition")
                if not other_passage_black(h):
                    break
                chain.append(out)
            slide_from = chain[-2]
            cur, new_beta = _slide_crossing(cur, slide_from)
            black_darts.update(new_beta)
            continue
        black_darts.add(head)
        black_darts.add(path_out)
        front_dart = path_out
    color = [BLACK if x in black_darts else GRAY for x in range(cur.n_darts)]
    transitions = tuple(
        sorted(
            {
                min(start_dart, cur.alpha[start_dart]),
                min(front_dart, cur.alpha[front_dart]),
            }
        )
    )
    col = Coloring(tuple(color), transitions, free_loop_transitions=2 * cur.free_loops)
    if not validate_coloring(cur, col):
        raise KnotfacetError("march produced an invalid coloring")
    return cur, col


def two_color(d: Diagram) -> tuple[Diagram, Coloring]:
    """A valid two-coloring of a knot diagram, rewriting when needed.

    Returns (possibly rewritten diagram of the same knot, coloring).
    When a direct cut of the strand exists the diagram comes back
    untouched; otherwise the advancing-front march rewrites it.
    """
    if components(d).count != 1:
        raise NotAKnot(f"two_color needs one component, got {components(d).count}")
    if d.n_vertices == 0:
        return d, Coloring((), (), free_loop_transitions=2)
    walk = _strand_walks(d)[0]
    cut = _direct_cut(d, walk)
    if cut is not None:
        return d, _coloring_from_cut(d, walk, *cut)
    return _march_two_color(d)


# ---------------------------------------------------------------------------
# links


def _face_with_all_components(d: Diagram) -> tuple[int, list[int]] | None:
    """A face whose boundary meets every component, with one chosen
    boundary dart per component (preferring faces of size == n)."""
    st = components(d)
    strand_of = st.strand_of_edge()
    n = len(st.strands)
    fi = face_of_dart(d)
    best = None
    for idx, f in enumerate(faces(d)):
        comps_here: dict[int, int] = {}
        for x in f.boundary:
            sid = strand_of[min(x, d.alpha[x])]
            comps_here.setdefault(sid, x)
        if len(comps_here) == n:
            cand = (idx, [comps_here[s] for s in range(n)])
            if f.size == n:
                return cand
            if best is None:
                best = cand
    return best


def color_link(d: Diagram) -> tuple[Diagram, Coloring, int]:
    """Color an n-component link with a base region R.

    Returns (rewritten diagram, coloring, face index of R).  R has one
    edge per component, each carrying that component's transition, and
    every crossing is bichromatic.  Fixture-scale inputs admit a direct
    search; otherwise a comb of pokes drags every component onto one
    face first.
    """
    st = components(d)
    n = st.count
    if n < 2:
        raise NotALink(f"color_link needs >= 2 components, got {n}")
    attempt = _color_link_search(d)
    if attempt is not None:
        return attempt
    combed = _comb(d)
    attempt = _color_link_search(combed)
    if attempt is None:
        raise KnotfacetError("color_link could not realize a base region")
    return attempt


def _color_link_search(d: Diagram) -> tuple[Diagram, Coloring, int] | None:
    """Search per-component cuts seeded on a common face."""
    st = components(d)
    strand_of = st.strand_of_edge()
    n = len(st.strands)
    hit = _face_with_all_components(d)
    if hit is None:
        return None
    face_idx, seed_darts = hit
    fs = faces(d)
    if fs[face_idx].size != n:
        return None
    walks = _strand_walks(d)
    # component sid: cyclic walk; seed gap = the edge of seed_darts[sid].
    # The seed dart is a face-boundary dart; the walk contains either the
    # dart or its alpha.
    import itertools

    gap_options: list[list[tuple[int, int]]] = []
    for sid, walk in enumerate(walks):
        seed = seed_darts[sid]
        m = len(walk)
        seed_gap = None
        for i, y in enumerate(walk):
            if y == seed or d.alpha[y] == seed:
                seed_gap = i
                break
        assert seed_gap is not None
        gap_options.append(
            [(seed_gap, g2, inside) for g2 in range(m) if g2 != seed_gap for inside in (True, False)]
        )

    pos: dict[int, dict[int, list[int]]] = {}
    for sid, walk in enumerate(walks):
        for i, y in enumerate(walk):
            pos.setdefault(y // 4, {}).setdefault(sid, []).append(i)

    def passage_color(sid: int, i: int, gaps) -> bool:
        g1, g2, inside = gaps[sid]
        lo, hi = min(g1, g2), max(g1, g2)
        return (lo < i <= hi) == inside

    # normalization: walking around R, each edge reads black then gray,
    # so the face-walk dart of every R-edge must come out black.
    r_walk_requirements: list[tuple[int, int, bool]] = []  # (sid, walk index, want_black)
    for x in fs[face_idx].boundary:
        sid = strand_of[min(x, d.alpha[x])]
        walk = walks[sid]
        for i, y in enumerate(walk):
            if y == x:
                r_walk_requirements.append((sid, i, True))
                break
            if d.alpha[y] == x:
                r_walk_requirements.append((sid, (i + 1) % len(walk), True))
                break

    for combo in itertools.product(*gap_options):
        ok = True
        for sid, i, want_black in r_walk_requirements:
            if passage_color(sid, i, combo) != want_black:
                ok = False
                break
        if ok:
            for v, by_sid in pos.items():
                cols = []
                for sid, idxs in by_sid.items():
                    for i in idxs:
                        cols.append(passage_color(sid, i, combo))
                if len(cols) == 2 and cols[0] == cols[1]:
                    ok = False
                    break
        if ok:
            color = [GRAY] * d.n_darts
            transitions = set()
            for sid, walk in enumerate(walks):
                for i, y in enumerate(walk):
                    col = BLACK if passage_color(sid, i, combo) else GRAY
                    color[y] = col
                    color[4 * (y // 4) + (y + 2) % 4] = col
                g1, g2, _inside = combo[sid]
                transitions.add(min(walk[g1], d.alpha[walk[g1]]))
                transitions.add(min(walk[g2], d.alpha[walk[g2]]))
            col = Coloring(tuple(color), tuple(sorted(transitions)), free_loop_transitions=2 * d.free_loops)
            if validate_coloring(d, col):
                # orientation detail (black-then-gray clockwise) is a
                # normalization; any valid seed assignment is accepted.
                return d, col, face_idx
    return None


def _comb(d: Diagram) -> Diagram:
    """Drag one arc of each component onto a single face by pokes."""
    from .rewrites import poke

    cur = d
    guard = 0
    while True:
        guard += 1
        if guard > 4 * max(2, cur.n_vertices):
            raise KnotfacetError("comb did not converge")
        st = components(cur)
        strand_of = st.strand_of_edge()
        n = len(st.strands)
        fi = face_of_dart(cur)
        fs = faces(cur)
        # pick the face meeting the most components
        best_idx, best_comps = None, -1
        for idx, f in enumerate(fs):
            comps_here = {strand_of[min(x, cur.alpha[x])] for x in f.boundary}
            if len(comps_here) > best_comps:
                best_idx, best_comps = idx, len(comps_here)
        if best_comps == n:
            target = fs[best_idx]
            comps_here = {strand_of[min(x, cur.alpha[x])] for x in target.boundary}
            if len(comps_here) == n:
                return cur
        # BFS over faces from best_idx to an edge of a missing component
        target = fs[best_idx]
        present = {strand_of[min(x, cur.alpha[x])] for x in target.boundary}
        missing = next(s for s in range(n) if s not in present)
        # find a face adjacent to best_idx whose boundary holds `missing`;
        # walk outwards via BFS.
        parent: dict[int, tuple[int, int]] = {}
        frontier = [best_idx]
        seen = {best_idx}
        goal_dart = None
        while frontier and goal_dart is None:
            nxt = []
            for fidx in frontier:
                for x in fs[fidx].boundary:
                    nb = fi[cur.alpha[x]]
                    if nb in seen:
                        continue
                    seen.add(nb)
                    parent[nb] = (fidx, x)
                    for y in fs[nb].boundary:
                        if strand_of[min(y, cur.alpha[y])] == missing:
                            goal_dart = (nb, y)
                            break
                    nxt.append(nb)
                    if goal_dart:
                        break
                if goal_dart:
                    break
            frontier = nxt
        if goal_dart is None:
            raise KnotfacetError("comb: no face path to a missing component")
        nb, y = goal_dart
        back_face, border_dart = parent[nb]
        # poke the missing component's edge (dart y, on face nb) across
        # the border edge into back_face: afterwards the finger tip lies
        # one face closer to the target.
        cur, _receipt = poke(cur, y, cur.alpha[border_dart], finger_over=True)
    return cur
