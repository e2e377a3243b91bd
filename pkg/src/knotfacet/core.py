"""Combinatorial-map diagrams and their face/Euler analysis.

A diagram is a reduced-or-not connected 4-valent map on the sphere,
encoded densely: vertex v owns darts 4v..4v+3 in counterclockwise
rotation order, so the rotation sigma is implicit and a map is pinned
down by the edge involution alpha alone.  Optional per-vertex crossing
bits say which opposite dart pair runs over; a bare projection carries
none.  Crossing-free unknotted circles cannot live in the map (they
have no vertices) and ride along as a counter instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    Disconnected,
    NonPlanar,
    NotInvolution,
    NotQuadrivalent,
    SelfLoopEdge,
    ValidationError,
)

__all__ = [
    "Diagram",
    "Face",
    "FaceVector",
    "StrandStructure",
    "build_diagram",
    "faces",
    "face_vector",
    "check_euler",
    "is_reduced",
    "components",
    "face_gcd",
    "sigma",
    "UNKNOT",
]


def sigma(d: int) -> int:
    """Counterclockwise rotation: next dart around the vertex of d."""
    return 4 * (d // 4) + (d + 1) % 4


def sigma_inv(d: int) -> int:
    return 4 * (d // 4) + (d + 3) % 4


@dataclass(frozen=True)
class Diagram:
    """Immutable 4-valent plane map with optional crossing bits.

    alpha: dense edge involution over darts 0..4V-1.
    crossing: per-vertex bit, over pair = (4v+bit, 4v+bit+2); None for a
        bare projection.
    free_loops: number of crossing-free closed curves carried alongside
        the map (the map itself may be empty only if free_loops >= 1).
    """

    alpha: tuple[int, ...]
    crossing: tuple[int, ...] | None = None
    free_loops: int = 0

    def __post_init__(self):
        n = len(self.alpha)
        if n % 4 != 0:
            raise NotQuadrivalent(f"dart count {n} is not a multiple of 4")
        if n == 0:
            if self.free_loops < 1:
                raise ValidationError("empty diagram needs at least one free loop")
            if self.crossing not in (None, ()):
                raise ValidationError("crossing data on an empty map")
            return
        a = self.alpha_array
        seen = np.zeros(n, dtype=bool)
        for d in range(n):
            ad = self.alpha[d]
            if not 0 <= ad < n:
                raise NotInvolution(f"alpha({d}) = {ad} out of range")
            if ad == d:
                raise NotInvolution(f"alpha fixes dart {d}")
            if self.alpha[ad] != d:
                raise NotInvolution(f"alpha not an involution at dart {d}")
            if ad // 4 == d // 4:
                raise SelfLoopEdge(f"edge {d}-{ad} joins vertex {d // 4} to itself")
            seen[d] = True
        if not seen.all():
            raise NotInvolution("alpha is not total")
        if self.crossing is not None:
            if len(self.crossing) != n // 4:
                raise ValidationError("crossing bit count != vertex count")
            if any(b not in (0, 1) for b in self.crossing):
                raise ValidationError("crossing bits must be 0 or 1")
        if not kernels.connected_under_sigma_alpha(a):
            raise Disconnected("map is not connected")
        euler = self.n_vertices - self.n_edges + kernels.orbit_count(kernels.face_permutation(a))
        if euler != 2:
            raise NonPlanar(f"Euler characteristic {euler} != 2 (genus {(2 - euler) // 2})")

    @property
    def n_vertices(self) -> int:
        return len(self.alpha) // 4

    @property
    def n_edges(self) -> int:
        return len(self.alpha) // 2

    @property
    def n_darts(self) -> int:
        return len(self.alpha)

    @property
    def alpha_array(self) -> np.ndarray:
        return np.asarray(self.alpha, dtype=np.int32)

    @property
    def bits_array(self) -> np.ndarray:
        if self.crossing is None:
            return np.full(self.n_vertices, -1, dtype=np.int32)
        return np.asarray(self.crossing, dtype=np.int32)

    @property
    def has_crossings(self) -> bool:
        return self.crossing is not None

    def vertex_of(self, d: int) -> int:
        return d // 4

    def over_darts(self, v: int) -> tuple[int, int]:
        """The two darts of the over strand at vertex v."""
        if self.crossing is None:
            raise ValidationError("bare projection has no over strand")
        c = self.crossing[v]
        return (4 * v + c, 4 * v + c + 2)

    def is_over(self, d: int) -> bool:
        v, k = divmod(d, 4)
        return self.crossing is not None and k % 2 == self.crossing[v]

    def forget_crossings(self) -> "Diagram":
        return Diagram(self.alpha, None, self.free_loops)

    def edges(self) -> list[tuple[int, int]]:
        return [(d, self.alpha[d]) for d in range(self.n_darts) if d < self.alpha[d]]

    def __repr__(self):  # compact; diagrams can be large
        kind = "diagram" if self.crossing is not None else "projection"
        return f"<{kind} V={self.n_vertices} loops={self.free_loops}>"


UNKNOT = Diagram(alpha=(), crossing=None, free_loops=1)


@dataclass(frozen=True)
class Face:
    """One complementary region: cyclic dart walk and its edge count."""

    boundary: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.boundary)


class FaceVector(Mapping[int, int]):
    """Multiset of face sizes: size -> count, zero counts dropped."""

    __slots__ = ("_counts", "_total_faces")

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = (), total_faces: int | None = None):
        items = dict(counts)
        self._counts = {s: c for s, c in sorted(items.items()) if c}
        if any(c < 0 for c in self._counts.values()):
            raise ValidationError("negative face count")
        self._total_faces = total_faces if total_faces is not None else sum(self._counts.values())

    def __getitem__(self, size: int) -> int:
        return self._counts.get(size, 0)

    def __iter__(self) -> Iterator[int]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other) -> bool:
        if isinstance(other, FaceVector):
            return self._counts == other._counts
        if isinstance(other, Mapping):
            return self._counts == {s: c for s, c in other.items() if c}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._counts.items()))

    def __repr__(self):
        inner = ", ".join(f"{s}: {c}" for s, c in self._counts.items())
        return "{" + inner + "}"

    @property
    def total_faces(self) -> int:
        """Face count including the two sides of any crossing-free loops."""
        return self._total_faces

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._counts)

    def odd_count(self) -> int:
        return sum(c for s, c in self._counts.items() if s % 2 == 1)

    def edge_slots(self) -> int:
        return sum(s * c for s, c in self._counts.items())

    def items(self):
        return self._counts.items()


@dataclass(frozen=True)
class StrandStructure:
    """Partition of the edges into closed strands (go-straight orbits)."""

    strands: tuple[tuple[int, ...], ...]  # per strand: edge ids (least dart)
    free_loops: int = 0

    @property
    def count(self) -> int:
        return len(self.strands) + self.free_loops

    def strand_of_edge(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, es in enumerate(self.strands):
            for e in es:
                out[e] = i
        return out


def build_diagram(
    vertex_count: int,
    sigma_map: Sequence[int] | None,
    alpha_map: Sequence[int],
    crossing: Sequence[int] | None = None,
    free_loops: int = 0,
) -> Diagram:
    """Validate and build a Diagram from total permutation maps.

    sigma_map may be None when alpha_map is already in dense form (vertex
    v owning darts 4v..4v+3 counterclockwise).  Otherwise darts are
    relabelled so every sigma 4-cycle becomes a dense block, which is the
    only shape Diagram stores.  `crossing`, when given, lists one dart of
    the over strand per vertex (original labels).
    """
    n = 4 * vertex_count
    if sigma_map is None:
        dense = range(n)
        old_of_new = list(range(n))
    else:
        if len(sigma_map) != n:
            raise NotQuadrivalent(f"sigma has {len(sigma_map)} entries, expected {n}")
        # Decompose sigma into cycles; each must be a 4-cycle.
        seen = [False] * n
        old_of_new = []
        for start in range(n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            d = sigma_map[start]
            while d != start:
                if not 0 <= d < n or seen[d]:
                    raise NotQuadrivalent("sigma is not a permutation into 4-cycles")
                cyc.append(d)
                seen[d] = True
                d = sigma_map[d]
            if len(cyc) != 4:
                raise NotQuadrivalent(f"sigma cycle through dart {start} has length {len(cyc)}")
            old_of_new.extend(cyc)
        dense = range(n)
    new_of_old = {od: nd for nd, od in enumerate(old_of_new)}
    if len(alpha_map) != n:
        raise NotInvolution(f"alpha has {len(alpha_map)} entries, expected {n}")
    alpha = tuple(new_of_old[alpha_map[old_of_new[nd]]] for nd in dense)
    bits = None
    if crossing is not None:
        if len(crossing) != vertex_count:
            raise ValidationError("crossing must list one over dart per vertex")
        bits_list = [0] * vertex_count
        claimed = [False] * vertex_count
        for od in crossing:
            nd = new_of_old[od]
            v, k = divmod(nd, 4)
            if claimed[v]:
                raise ValidationError(f"two over darts given for vertex {v}")
            claimed[v] = True
            bits_list[v] = k % 2
        if not all(claimed):
            raise ValidationError("crossing must cover every vertex")
        bits = tuple(bits_list)
    return Diagram(alpha=alpha, crossing=bits, free_loops=free_loops)


def faces(d: Diagram) -> list[Face]:
    """The complementary regions: orbits of sigma o alpha.

    Walking phi(x) = sigma(alpha(x)) traverses one boundary; each face of
    size n contributes an orbit of n darts.  Orbits are reported sorted
    by their least dart, each rotated to start at it.
    """
    n = d.n_darts
    out: list[Face] = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        walk = []
        x = start
        while not seen[x]:
            seen[x] = True
            walk.append(x)
            a = d.alpha[x]
            x = sigma(a)
        out.append(Face(tuple(walk)))
    return out


def face_vector(d: Diagram) -> FaceVector:
    """Counts of n-gons.  Crossing-free loops add two boundaryless faces
    each to the total (a circle bounds two disks) but no sized entry."""
    counts: dict[int, int] = {}
    for f in faces(d):
        counts[f.size] = counts.get(f.size, 0) + 1
    extra = 0
    if d.n_vertices == 0:
        extra = d.free_loops + 1
    elif d.free_loops:
        extra = d.free_loops
    return FaceVector(counts, total_faces=sum(counts.values()) + extra)


def check_euler(fv: FaceVector) -> bool:
    """The sphere identity 2*p2 + p3 = 8 + sum_{i>=5} (i-4)*p_i, exactly."""
    lhs = 2 * fv[2] + fv[3]
    rhs = 8 + sum((s - 4) * c for s, c in fv.items() if s >= 5)
    return lhs == rhs


def face_of_dart(d: Diagram) -> list[int]:
    """face index per dart, faces ordered as in faces(d)."""
    idx = [-1] * d.n_darts
    for i, f in enumerate(faces(d)):
        for x in f.boundary:
            idx[x] = i
    return idx


def corner_face(d: Diagram, face_idx: Sequence[int], v: int, k: int) -> int:
    """Face occupying the corner between darts 4v+k and sigma(4v+k).

    A face walk that enters v along the edge of dart 4v+k leaves along
    the next dart counterclockwise, so the wedge between the two belongs
    to the orbit of that next dart.
    """
    return face_idx[sigma(4 * v + k)]


def is_reduced(d: Diagram) -> bool:
    """No nugatory crossing: at every vertex, opposite quadrants differ."""
    if d.n_vertices == 0:
        return True
    fi = face_of_dart(d)
    for v in range(d.n_vertices):
        c0 = corner_face(d, fi, v, 0)
        c1 = corner_face(d, fi, v, 1)
        c2 = corner_face(d, fi, v, 2)
        c3 = corner_face(d, fi, v, 3)
        if c0 == c2 or c1 == c3:
            return False
    return True


def components(d: Diagram) -> StrandStructure:
    """Closed strands: orbits of the go-straight permutation, as edge sets."""
    n = d.n_darts
    if n == 0:
        return StrandStructure(strands=(), free_loops=d.free_loops)
    tau = kernels.strand_permutation(d.alpha_array)
    seen = [False] * n
    strands: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        walk = []
        x = start
        while not seen[x]:
            seen[x] = True
            seen[d.alpha[x]] = True  # the reverse traversal is the same strand
            walk.append(min(x, d.alpha[x]))
            x = int(tau[x])
        strands.append(tuple(sorted(set(walk))))
    return StrandStructure(strands=tuple(strands), free_loops=d.free_loops)


def face_gcd(fv: FaceVector) -> int:
    """gcd of the face sizes present; 0-crossing diagrams have none."""
    g = 0
    for s in fv.support:
        g = math.gcd(g, s)
    if g == 0:
        raise ValidationError("face gcd of an empty face vector")
    return g


def descending_bits(d: Diagram) -> tuple[int, ...]:
    """Crossing bits that make the shadow a trivial (split) diagram.

    Strands are walked in canonical order; every crossing is set so its
    first-visited passage runs over.  Each component is then descending
    and earlier components lie entirely over later ones, so the result
    is an unlink diagram regardless of the shadow.
    """
    n = d.n_darts
    bits: list[int | None] = [None] * d.n_vertices
    seen = [False] * n
    for x in range(n):
        if seen[x]:
            continue
        y = x
        while not seen[y]:
            seen[y] = True
            seen[d.alpha[y]] = True
            v, k = divmod(y, 4)
            if bits[v] is None:
                bits[v] = k % 2
            a = d.alpha[y]
            y = 4 * (a // 4) + (a + 2) % 4
    assert all(b is not None for b in bits)
    return tuple(bits)  # type: ignore[arg-type]
