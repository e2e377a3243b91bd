"""PD / Gauss / JSON parsing, emission, and round-trips."""

import pytest

from knotfacet.codec import emit_gauss, emit_pd, from_json, parse_gauss, parse_pd, to_json
from knotfacet.core import components, face_vector
from knotfacet.errors import (
    EdgeLabelArity,
    GaussSyntaxError,
    PdSyntaxError,
    SchemaError,
    UnrealizableGaussCode,
)
from knotfacet.fixtures import all_fixtures, octahedral_link, trefoil
from knotfacet.invariants import isomorphic


class TestParsePd:
    def test_standard_trefoil(self):
        d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
        assert d.n_vertices == 3
        assert face_vector(d) == {2: 3, 3: 2}
        assert components(d).count == 1

    def test_comma_separated(self):
        d = parse_pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]")
        assert d.n_vertices == 3

    def test_label_arity(self):
        with pytest.raises(EdgeLabelArity):
            parse_pd("X[1,2,3,4]")

    def test_empty(self):
        with pytest.raises(PdSyntaxError):
            parse_pd("   ")

    def test_garbage_reports_position(self):
        with pytest.raises(PdSyntaxError) as ei:
            parse_pd("X[1,4,2,5] Y[3,6,4,1]")
        assert ei.value.line == 1
        assert ei.value.column > 1

    def test_spec_trefoil_string_is_not_planar(self):
        # Under the ccw-from-incoming-understrand convention this widely
        # circulated string glues to a genus-1 map.
        from knotfacet.errors import NonPlanar

        with pytest.raises(NonPlanar):
            parse_pd("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]")


class TestParseGauss:
    def test_trefoil_roundtrips_to_pd(self):
        d_pd = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
        code = emit_gauss(d_pd)
        d2 = parse_gauss(code)
        assert isomorphic(d_pd, d2)

    def test_simple_valid_code(self):
        d = parse_gauss("O1+U2+O3+U1+O2+U3+")
        assert d.n_vertices == 3
        assert components(d).count == 1
        assert face_vector(d) == {2: 3, 3: 2}

    def test_malformed_repeat(self):
        with pytest.raises(GaussSyntaxError):
            parse_gauss("O1+U2+O1+U2+")  # crossing 1 passed twice as O

    def test_sign_conflict(self):
        with pytest.raises(Exception) as ei:
            parse_gauss("O1+U2+O2+U1-")
        from knotfacet.errors import InconsistentSigns

        assert isinstance(ei.value, InconsistentSigns)

    def test_unrealizable(self):
        # O1 O2 O3 U1 U2 U3 with all-positive signs glues to genus > 0.
        with pytest.raises(UnrealizableGaussCode):
            parse_gauss("O1+O2+O3+U1+U2+U3+")

    def test_empty(self):
        with pytest.raises(GaussSyntaxError):
            parse_gauss(" ; ")


class TestRoundTrips:
    @pytest.mark.parametrize("name", sorted(all_fixtures()))
    def test_pd_roundtrip(self, name):
        d = all_fixtures()[name]
        if d.n_vertices == 0:
            return
        assert isomorphic(parse_pd(emit_pd(d)), d)

    @pytest.mark.parametrize("name", sorted(all_fixtures()))
    def test_gauss_roundtrip(self, name):
        d = all_fixtures()[name]
        if d.n_vertices == 0:
            return
        assert isomorphic(parse_gauss(emit_gauss(d)), d)

    @pytest.mark.parametrize("name", sorted(all_fixtures()))
    def test_json_roundtrip(self, name):
        d = all_fixtures()[name]
        assert isomorphic(from_json(to_json(d)), d)

    def test_octahedral_gauss(self):
        d = octahedral_link()
        assert isomorphic(parse_gauss(emit_gauss(d)), d)


class TestJson:
    def test_three_dart_vertex_rejected(self):
        with pytest.raises(SchemaError):
            from_json('{"format": "knotfacet-diagram", "version": 1, "alpha": [1, 0, 2], "crossing": null, "free_loops": 0}')

    def test_not_json(self):
        with pytest.raises(SchemaError):
            from_json("][")

    def test_bad_format(self):
        with pytest.raises(SchemaError):
            from_json('{"format": "other", "alpha": []}')

    def test_unknot(self):
        from knotfacet.core import UNKNOT

        assert isomorphic(from_json(to_json(UNKNOT)), UNKNOT)

    def test_projection_roundtrip(self):
        d = trefoil().forget_crossings()
        d2 = from_json(to_json(d))
        assert d2.crossing is None
        assert isomorphic(d, d2)
