"""Exact arrangements of axis-parallel closed wires.

A wire is a closed rectilinear polyline with integer vertices.  The
arrangement builder intersects all wires (transversal crossings at
integer points only), producing a Diagram plus the geometry each dart
came from.  Overlaps or tangencies are rejected: wire sets are always
designed on disjoint parity classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Diagram
from .errors import ValidationError

Point = tuple[int, int]


@dataclass
class Wire:
    """Closed axis-parallel polyline: corner list, consecutive points
    differ in exactly one coordinate; last point connects to first."""

    corners: list[Point]

    def segments(self) -> list[tuple[Point, Point]]:
        out = []
        n = len(self.corners)
        for i in range(n):
            a = self.corners[i]
            b = self.corners[(i + 1) % n]
            if a == b:
                continue
            if a[0] != b[0] and a[1] != b[1]:
                raise ValidationError(f"wire corner {a}->{b} not axis-parallel")
            out.append((a, b))
        return out


@dataclass
class Arrangement:
    """The combinatorial map of a wire family plus its geometry."""

    diagram: Diagram
    vertex_pos: list[Point]  # crossing coordinates per map vertex
    dart_dir: list[tuple[int, int]]  # outgoing direction per dart
    wire_of_dart: list[int]
    corners_per_wire: list[int]
    paths: dict[int, list[Point]] = field(default_factory=dict)  # per edge (least dart): polyline between endpoints


_DIR_SLOT = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}  # E,N,W,S ccw


def _walk_points(w: Wire) -> list[Point]:
    """All lattice points along the wire, in order, start repeated last."""
    pts: list[Point] = []
    for a, b in w.segments():
        dx = (b[0] > a[0]) - (b[0] < a[0])
        dy = (b[1] > a[1]) - (b[1] < a[1])
        x, y = a
        while (x, y) != b:
            pts.append((x, y))
            x += dx
            y += dy
    return pts


def build_arrangement(wires: list[Wire], crossing_bits: "dict[Point, int] | None" = None) -> Arrangement:
    """Intersect the wires into a 4-valent plane map.

    Crossings happen where exactly two wires (or two passes of one wire)
    run through the same lattice point perpendicular to each other; any
    other coincidence (overlapping segments, corners on wires, more than
    two passes) raises.  crossing_bits optionally fixes the over strand
    per crossing point: bit 0 means the horizontal strand runs over.
    """
    passes: dict[Point, list[tuple[int, int, tuple[int, int], tuple[int, int]]]] = {}
    # point -> list of (wire idx, step idx, dir_in, dir_out)
    per_wire_points: list[list[Point]] = []
    for wi, w in enumerate(wires):
        pts = _walk_points(w)
        per_wire_points.append(pts)
        m = len(pts)
        for i, p in enumerate(pts):
            prv = pts[(i - 1) % m]
            nxt = pts[(i + 1) % m]
            dir_in = (p[0] - prv[0], p[1] - prv[1])
            dir_out = (nxt[0] - p[0], nxt[1] - p[1])
            passes.setdefault(p, []).append((wi, i, dir_in, dir_out))
    crossings: dict[Point, list] = {}
    for p, lst in passes.items():
        if len(lst) == 1:
            continue
        if len(lst) > 2:
            raise ValidationError(f"more than two passes through {p}")
        d1 = lst[0][2]
        d2 = lst[1][2]
        if lst[0][2] != lst[0][3] or lst[1][2] != lst[1][3]:
            raise ValidationError(f"corner at shared point {p}")
        if d1[0] * d2[0] + d1[1] * d2[1] != 0:
            raise ValidationError(f"non-transversal coincidence at {p}")
        crossings[p] = lst
    vertex_pos = sorted(crossings)
    vid = {p: i for i, p in enumerate(vertex_pos)}
    n = 4 * len(vertex_pos)
    alpha = [-1] * n
    dart_dir: list[tuple[int, int]] = [(0, 0)] * n
    wire_of_dart = [-1] * n
    paths: dict[int, list[Point]] = {}

    def dart_at(p: Point, direction: tuple[int, int]) -> int:
        return 4 * vid[p] + _DIR_SLOT[direction]

    # walk each wire, connecting consecutive crossing passages
    for wi, pts in enumerate(per_wire_points):
        m = len(pts)
        hits = [i for i, p in enumerate(pts) if p in crossings]
        if not hits:
            raise ValidationError(f"wire {wi} crosses nothing; carry it as a free loop instead")
        for k, i in enumerate(hits):
            j = hits[(k + 1) % len(hits)]
            p = pts[i]
            q = pts[j]
            # outgoing dart at p along the wire, incoming at q
            nxt = pts[(i + 1) % m]
            out_dir = (nxt[0] - p[0], nxt[1] - p[1])
            prv = pts[(j - 1) % m]
            in_dir = (q[0] - prv[0], q[1] - prv[1])
            a = dart_at(p, out_dir)
            b = dart_at(q, (-in_dir[0], -in_dir[1]))
            if alpha[a] != -1 or alpha[b] != -1:
                raise ValidationError("conflicting wire connection")
            alpha[a] = b
            alpha[b] = a
            wire_of_dart[a] = wi
            wire_of_dart[b] = wi
            dart_dir[a] = out_dir
            dart_dir[b] = (-in_dir[0], -in_dir[1])
            # record geometry between the two crossings
            path = []
            t = i
            while True:
                path.append(pts[t % m])
                if t % m == j and len(path) > 1:
                    break
                t += 1
                if t > i + m + 1:
                    break
            paths[min(a, b)] = path if a < b else path[::-1]
    bits = None
    if crossing_bits is not None:
        bits_list = []
        for p in vertex_pos:
            b = crossing_bits.get(p, 0)
            # bit 0: horizontal over. over pair = (E, W) = slots (0, 2)
            bits_list.append(0 if b == 0 else 1)
        bits = tuple(bits_list)
    d = Diagram(tuple(alpha), bits)
    corners = []
    for w in wires:
        cnt = 0
        segs = w.segments()
        m = len(segs)
        for i in range(m):
            d1 = segs[i]
            d2 = segs[(i + 1) % m]
            v1 = (d1[1][0] - d1[0][0], d1[1][1] - d1[0][1])
            v2 = (d2[1][0] - d2[0][0], d2[1][1] - d2[0][1])
            if (v1[0] == 0) != (v2[0] == 0):
                cnt += 1
        corners.append(cnt)
    return Arrangement(
        diagram=d,
        vertex_pos=vertex_pos,
        dart_dir=dart_dir,
        wire_of_dart=wire_of_dart,
        corners_per_wire=corners,
        paths=paths,
    )
