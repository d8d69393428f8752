import json
import math

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliqueforest import (
    BumpPoly,
    Compose,
    ExprFormatError,
    Identity,
    Inverse,
    Manifold,
    MobiusI,
    PerturbedF,
    Power,
    RotationS1,
    SineShear,
    Translation,
    dict_to_expr,
    dumps_expr,
    evaluate,
    expr_to_dict,
    loads_expr,
)
from cliqueforest.schemas import EXPR_SCHEMA

SAMPLES = [
    Identity(Manifold.INTERVAL),
    Identity(Manifold.CIRCLE),
    MobiusI(2.718281828),
    RotationS1(1.0),
    SineShear(1.5),
    Translation(-2 * math.pi),
    PerturbedF((BumpPoly(0.01, 3), BumpPoly(-0.002, 5, 1, (0.0, 1.0)))),
    Compose((MobiusI(2.0), Inverse(MobiusI(1.5)), Power(MobiusI(1.2), -3))),
    Power(RotationS1(0.5), 7),
]


class TestRoundTrip:
    @pytest.mark.parametrize("e", SAMPLES, ids=lambda e: e.kind())
    def test_exact_round_trip(self, e):
        assert loads_expr(dumps_expr(e)) == e

    @pytest.mark.parametrize("e", SAMPLES, ids=lambda e: e.kind())
    def test_schema_valid(self, e):
        jsonschema.validate(expr_to_dict(e), EXPR_SCHEMA)

    @pytest.mark.parametrize("e", SAMPLES, ids=lambda e: e.kind())
    def test_byte_stable(self, e):
        assert dumps_expr(e) == dumps_expr(loads_expr(dumps_expr(e)))

    @given(st.floats(min_value=1.0001, max_value=math.pi - 1e-4))
    @settings(max_examples=100, deadline=None)
    def test_float_params_bit_exact(self, a):
        back = loads_expr(dumps_expr(MobiusI(a)))
        assert back.alpha == a  # decimal-string format preserves every bit

    def test_values_reproduce(self):
        e = Compose((MobiusI(2.0), Inverse(MobiusI(1.5))))
        back = loads_expr(dumps_expr(e))
        for x in (0.0, 0.3, 0.7, 1.0):
            assert evaluate(back, x) == evaluate(e, x)


class TestErrors:
    def test_invalid_json(self):
        with pytest.raises(ExprFormatError):
            loads_expr("{not json")

    def test_missing_manifold(self):
        with pytest.raises(ExprFormatError):
            dict_to_expr({"expr": {"kind": "identity"}})

    def test_unknown_kind(self):
        with pytest.raises(ExprFormatError):
            dict_to_expr({"manifold": "I", "expr": {"kind": "frobnicate"}})

    def test_kind_manifold_mismatch(self):
        with pytest.raises(ExprFormatError):
            dict_to_expr({"manifold": "S1", "expr": {"kind": "mobius", "alpha": "2"}})

    def test_missing_parameter(self):
        with pytest.raises(ExprFormatError):
            dict_to_expr({"manifold": "I", "expr": {"kind": "mobius"}})

    def test_node_without_kind(self):
        with pytest.raises(ExprFormatError):
            dict_to_expr({"manifold": "I", "expr": {}})

    def test_nested_error_surfaces(self):
        doc = {
            "manifold": "I",
            "expr": {"kind": "inverse", "inner": {"kind": "rotation", "theta": "1"}},
        }
        with pytest.raises(ExprFormatError):
            dict_to_expr(doc)
