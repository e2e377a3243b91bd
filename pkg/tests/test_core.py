"""Diagram construction, faces, Euler identity, reducedness, strands."""

import pytest

from knotfacet.core import (
    UNKNOT,
    Diagram,
    FaceVector,
    build_diagram,
    check_euler,
    components,
    face_gcd,
    face_of_dart,
    face_vector,
    faces,
    is_reduced,
)
from knotfacet.errors import (
    Disconnected,
    NonPlanar,
    NotInvolution,
    NotQuadrivalent,
    SelfLoopEdge,
    ValidationError,
)

# Hand-built maps (dense dart encoding, vertex v owns darts 4v..4v+3 ccw).

# Standard trefoil projection: orbits enumerated by hand from the table
# PD code X[1,4,2,5] X[3,6,4,1] X[5,2,6,3].
TREFOIL_ALPHA = (7, 6, 9, 8, 11, 10, 1, 0, 3, 2, 5, 4)

# (2,4)-torus link: closure of the four-crossing 2-braid; vertex i darts
# are NE,NW,SW,SE and NE_i ~ SE_{i+1}, NW_i ~ SW_{i+1}.
TORUS24_ALPHA = (7, 6, 13, 12, 11, 10, 1, 0, 15, 14, 5, 4, 3, 2, 9, 8)

# Octahedral (3,3)-torus projection: closure of (s1 s2)^3, wired by hand.
OCTA_ALPHA = (
    6, 10, 17, 21, 15, 11, 0, 20, 14, 18, 1, 5,
    23, 19, 8, 4, 22, 2, 9, 13, 7, 3, 16, 12,
)


def trefoil():
    return Diagram(TREFOIL_ALPHA, crossing=(1, 1, 1))


def torus24():
    return Diagram(TORUS24_ALPHA, crossing=(0, 0, 0, 0))


def octahedron():
    return Diagram(OCTA_ALPHA)


class TestBuildDiagram:
    def test_octahedron_is_valid_and_planar(self):
        d = octahedron()
        assert d.n_vertices == 6
        assert d.n_edges == 12
        # V - E + F = 6 - 12 + 8 = 2 via orbit count
        assert len(faces(d)) == 8

    def test_self_loop_rejected(self):
        # one vertex, alpha pairing its own darts
        with pytest.raises(SelfLoopEdge):
            Diagram((1, 0, 3, 2))

    def test_torus_grid_rejected_nonplanar(self):
        # 4-valent quadrilateral torus grid on one vertex is excluded by
        # the self-loop rule, so build a 2-vertex genus-1 gluing instead:
        # pair dart 4v+k of v0 with dart 4v+k of v1 (a "parallel" gluing
        # whose faces are two squares: V-E+F = 2-4+2 = 0).
        alpha = (4, 5, 6, 7, 0, 1, 2, 3)
        with pytest.raises(NonPlanar):
            Diagram(alpha)

    def test_not_involution(self):
        with pytest.raises(NotInvolution):
            Diagram((1, 2, 3, 0, 7, 6, 5, 4))

    def test_disconnected(self):
        two_hopf = TORUS24_ALPHA[:8]  # darts 0..7 pair among themselves? no:
        # build a genuinely disconnected union of two 2-vertex planar maps.
        # v0-v1 quadruple edge, v2-v3 quadruple edge, nested gluing that is
        # planar per component.
        def quad_pair(base):
            # v, w joined by 4 edges: dart v_k ~ w_{3-k} keeps it planar
            a = {}
            for k in range(4):
                a[base + k] = base + 4 + (3 - k)
                a[base + 4 + (3 - k)] = base + k
            return a

        m = quad_pair(0) | quad_pair(8)
        alpha = tuple(m[d] for d in range(16))
        with pytest.raises(Disconnected):
            Diagram(alpha)

    def test_build_from_sparse_sigma(self):
        # Same trefoil but with darts relabelled 2 apart and sigma explicit.
        perm = [(d * 7 + 3) % 12 for d in range(12)]
        assert sorted(perm) == list(range(12))
        old_of_new = perm
        sigma_map = [0] * 12
        alpha_map = [0] * 12
        for nd in range(12):
            v, k = divmod(nd, 4)
            sigma_map[old_of_new[nd]] = old_of_new[4 * v + (k + 1) % 4]
            alpha_map[old_of_new[nd]] = old_of_new[TREFOIL_ALPHA[nd]]
        d = build_diagram(3, sigma_map, alpha_map)
        assert face_vector(d) == {2: 3, 3: 2}

    def test_bad_sigma_cycle_length(self):
        with pytest.raises(NotQuadrivalent):
            build_diagram(1, [1, 0, 3, 2], [2, 3, 0, 1])


class TestFaces:
    def test_trefoil_faces(self):
        assert sorted(f.size for f in faces(trefoil())) == [2, 2, 2, 3, 3]

    def test_torus24_faces(self):
        assert sorted(f.size for f in faces(torus24())) == [2, 2, 2, 2, 4, 4]

    def test_octahedron_faces(self):
        assert [f.size for f in faces(octahedron())] == [3] * 8

    def test_face_sizes_sum_to_2e(self):
        for d in (trefoil(), torus24(), octahedron()):
            assert sum(f.size for f in faces(d)) == 2 * d.n_edges

    def test_corner_face_consistency(self):
        # each face of size s owns exactly s corners
        for d in (trefoil(), torus24(), octahedron()):
            fi = face_of_dart(d)
            fs = faces(d)
            from knotfacet.core import corner_face

            tally = [0] * len(fs)
            for v in range(d.n_vertices):
                for k in range(4):
                    tally[corner_face(d, fi, v, k)] += 1
            assert tally == [f.size for f in fs]


class TestFaceVector:
    def test_trefoil(self):
        assert face_vector(trefoil()) == {2: 3, 3: 2}

    def test_torus24(self):
        assert face_vector(torus24()) == {2: 4, 4: 2}

    def test_unknot_two_faces(self):
        fv = face_vector(UNKNOT)
        assert dict(fv.items()) == {}
        assert fv.total_faces == 2

    def test_invariants(self):
        for d in (trefoil(), torus24(), octahedron()):
            fv = face_vector(d)
            assert fv.edge_slots() == 2 * d.n_edges
            assert fv.total_faces == d.n_edges - d.n_vertices + 2
            assert fv.odd_count() % 2 == 0


class TestCheckEuler:
    def test_trefoil_vector(self):
        assert check_euler(FaceVector({2: 3, 3: 2}))

    def test_torus_vector(self):
        assert check_euler(FaceVector({2: 4, 4: 2}))

    def test_all_quads_fails(self):
        assert not check_euler(FaceVector({4: 9}))


class TestIsReduced:
    def test_trefoil_reduced(self):
        assert is_reduced(trefoil())

    def test_connected_sum_vertex_not_reduced(self):
        # Two trefoils joined through one fresh crossing x: the curve of
        # the first runs in and back out of x on opposite darts, the
        # second takes the other opposite pair, so x is a cut vertex and
        # its two side quadrants share the outer face.
        alpha = list(TREFOIL_ALPHA) + [a + 12 for a in TREFOIL_ALPHA] + [0, 0, 0, 0]

        def link(a, b):
            alpha[a] = b
            alpha[b] = a

        link(0, 24)
        link(25, 7)
        link(12, 26)
        link(27, 19)
        d = Diagram(tuple(alpha))
        assert d.n_vertices == 7
        fv = face_vector(d)
        assert check_euler(fv)
        assert not is_reduced(d)
        assert components(d).count == 1

    def test_octahedron_reduced(self):
        assert is_reduced(octahedron())


class TestComponents:
    def test_trefoil_is_knot(self):
        assert components(trefoil()).count == 1

    def test_torus24_two(self):
        assert components(torus24()).count == 2

    def test_octahedron_three(self):
        assert components(octahedron()).count == 3

    def test_unknot(self):
        assert components(UNKNOT).count == 1

    def test_edge_partition(self):
        st = components(octahedron())
        all_edges = sorted(e for s in st.strands for e in s)
        assert all_edges == sorted(min(d, OCTA_ALPHA[d]) for d in range(24) if d < OCTA_ALPHA[d])


class TestFaceGcd:
    def test_values(self):
        assert face_gcd(FaceVector({2: 4, 4: 2})) == 2
        assert face_gcd(FaceVector({2: 3, 3: 2})) == 1
        assert face_gcd(FaceVector({3: 8})) == 3

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            face_gcd(FaceVector({}))
