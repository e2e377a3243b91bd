"""Two-coloring constructions and their invariants."""

import pytest

from knotfacet.coloring import (
    BLACK,
    GRAY,
    Coloring,
    _direct_cut,
    _slide_crossing,
    _strand_walks,
    color_link,
    odd_faces,
    two_color,
    validate_coloring,
)
from knotfacet.core import UNKNOT, Diagram, components, face_vector, check_euler, is_reduced
from knotfacet.errors import NotAKnot, NotALink
from knotfacet.fixtures import knot_fixtures, octahedral_link, torus24, trefoil
from knotfacet.invariants import same_link_desk_check


class TestTwoColor:
    def test_trefoil_no_rewrite(self):
        d = trefoil()
        d2, col = two_color(d)
        assert d2 is d  # direct cut exists, no pushes
        assert validate_coloring(d2, col)
        assert col.transition_count() == 2

    def test_unknot(self):
        d2, col = two_color(UNKNOT)
        assert col.transition_count() == 2
        assert validate_coloring(d2, col)

    def test_all_fixture_knots(self):
        for name, d in knot_fixtures().items():
            d2, col = two_color(d)
            assert validate_coloring(d2, col), name
            # valid coloring forces at most four odd faces
            assert len(odd_faces(d2)) <= 4, name
            if d2.n_vertices:
                assert check_euler(face_vector(d2)), name

    def test_not_a_knot(self):
        with pytest.raises(NotAKnot):
            two_color(torus24())

    def test_odd_faces_have_transitions(self):
        d = trefoil()
        d2, col = two_color(d)
        from knotfacet.core import faces

        todd = [f for f in faces(d2) if f.size % 2 == 1]
        tset = set(col.transitions)
        for f in todd:
            edges = {min(x, d2.alpha[x]) for x in f.boundary}
            assert edges & tset

    def test_all_black_invalid(self):
        d = trefoil()
        col = Coloring((BLACK,) * d.n_darts, ())
        assert not validate_coloring(d, col)

    def test_monochromatic_crossing_invalid(self):
        d = trefoil()
        _, col = two_color(d)
        # flip one passage's colors to force a monochromatic crossing
        colors = list(col.color)
        colors[0] = colors[2] = colors[1]
        bad = Coloring(tuple(colors), col.transitions)
        assert not validate_coloring(d, bad)


class TestSlideCrossing:
    def test_preserves_planarity_and_type(self):
        d = trefoil()
        walks = _strand_walks(d)
        out, new_beta = _slide_crossing(d, walks[0][0])
        assert out.n_vertices in (d.n_vertices + 1, d.n_vertices + 2)
        assert check_euler(face_vector(out))
        assert components(out).count == 1
        v = same_link_desk_check(d, out)
        assert v.verdict == "confirmed", v.reason

    def test_original_bits_kept(self):
        d = trefoil()
        out, _ = _slide_crossing(d, _strand_walks(d)[0][0])
        assert out.crossing[: d.n_vertices] == d.crossing


def _no_cut_shadow():
    """A one-component census shadow admitting no direct cut."""
    from knotfacet.census import enumerate_projections

    for d in enumerate_projections(6):
        if components(d).count != 1:
            continue
        walk = _strand_walks(d)[0]
        if _direct_cut(d, walk) is None:
            return d
    return None


class TestMarch:
    def test_march_on_no_cut_diagram(self):
        shadow = _no_cut_shadow()
        if shadow is None:
            pytest.skip("all small shadows admit direct cuts")
        # alternate over/under along the strand: an alternating diagram
        bits = [None] * shadow.n_vertices
        over = True
        seen = [False] * shadow.n_darts
        walk = _strand_walks(shadow)[0]
        for y in walk:
            v, k = divmod(y, 4)
            if bits[v] is None:
                bits[v] = k % 2 if over else (k + 1) % 2
            over = not over
        d = Diagram(shadow.alpha, tuple(bits))
        d2, col = two_color(d)
        assert validate_coloring(d2, col)
        assert len(odd_faces(d2)) <= 4
        v = same_link_desk_check(d, d2)
        assert v.verdict == "confirmed", v.reason


class TestColorLink:
    def test_torus24(self):
        d = torus24()
        d2, col, r_idx = color_link(d)
        assert validate_coloring(d2, col)
        from knotfacet.core import faces

        r = faces(d2)[r_idx]
        assert r.size == 2
        # one edge per component, transitions on both
        st = components(d2)
        strand_of = st.strand_of_edge()
        sids = {strand_of[min(x, d2.alpha[x])] for x in r.boundary}
        assert len(sids) == 2
        for x in r.boundary:
            assert min(x, d2.alpha[x]) in col.transitions

    def test_octahedral(self):
        d = octahedral_link()
        d2, col, r_idx = color_link(d)
        assert validate_coloring(d2, col)
        from knotfacet.core import faces

        r = faces(d2)[r_idx]
        assert r.size == 3
        st = components(d2)
        strand_of = st.strand_of_edge()
        sids = {strand_of[min(x, d2.alpha[x])] for x in r.boundary}
        assert len(sids) == 3

    def test_knot_rejected(self):
        with pytest.raises(NotALink):
            color_link(trefoil())
