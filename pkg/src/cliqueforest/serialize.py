"""JSON tree format for diffeomorphism expressions.

Node kind plus parameters, numeric fields as decimal strings with 17
significant digits (exact float round trip), manifold tag at the root.
"""
from __future__ import annotations

import json

from .diffeo import (
    BumpPoly,
    BumpTrig,
    Compose,
    DiffeoExpr,
    Identity,
    Inverse,
    Manifold,
    MobiusI,
    PerturbedF,
    PerturbedLiftS1,
    Power,
    RotationS1,
    SineShear,
    Translation,
    _fmt,
)


class ExprFormatError(ValueError):
    """Malformed expression document."""


def expr_to_node(e: DiffeoExpr) -> dict:
    k = e.kind()
    if k == "identity":
        return {"kind": "identity"}
    if k == "mobius":
        return {"kind": "mobius", "alpha": _fmt(e.alpha)}
    if k == "rotation":
        return {"kind": "rotation", "theta": _fmt(e.theta)}
    if k == "sine_shear":
        return {"kind": "sine_shear", "a": _fmt(e.a)}
    if k == "translation":
        return {"kind": "translation", "c": _fmt(e.c)}
    if k == "perturbed":
        return {"kind": "perturbed", "bumps": [b.to_dict() for b in e.bumps]}
    if k == "perturbed_lift":
        return {"kind": "perturbed_lift", "bumps": [b.to_dict() for b in e.bumps]}
    if k == "compose":
        return {"kind": "compose", "parts": [expr_to_node(p) for p in e.parts]}
    if k == "inverse":
        return {"kind": "inverse", "inner": expr_to_node(e.inner)}
    if k == "power":
        return {"kind": "power", "exponent": e.exponent, "inner": expr_to_node(e.inner)}
    raise ExprFormatError(f"unknown node kind {k!r}")


def node_to_expr(node: dict, manifold: Manifold) -> DiffeoExpr:
    try:
        kind = node["kind"]
    except (TypeError, KeyError):
        raise ExprFormatError("node without a 'kind' field")
    try:
        if kind == "identity":
            return Identity(manifold)
        if kind == "mobius":
            _require(manifold, Manifold.INTERVAL, kind)
            return MobiusI(float(node["alpha"]))
        if kind == "rotation":
            _require(manifold, Manifold.CIRCLE, kind)
            return RotationS1(float(node["theta"]))
        if kind == "sine_shear":
            _require(manifold, Manifold.LINE, kind)
            return SineShear(float(node["a"]))
        if kind == "translation":
            _require(manifold, Manifold.LINE, kind)
            return Translation(float(node["c"]))
        if kind == "perturbed":
            _require(manifold, Manifold.INTERVAL, kind)
            return PerturbedF([BumpPoly.from_dict(b) for b in node["bumps"]])
        if kind == "perturbed_lift":
            _require(manifold, Manifold.CIRCLE, kind)
            return PerturbedLiftS1([BumpTrig.from_dict(b) for b in node["bumps"]])
        if kind == "compose":
            return Compose(tuple(node_to_expr(p, manifold) for p in node["parts"]))
        if kind == "inverse":
            return Inverse(node_to_expr(node["inner"], manifold))
        if kind == "power":
            return Power(node_to_expr(node["inner"], manifold), int(node["exponent"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ExprFormatError(f"bad {kind!r} node: {exc}") from exc
    raise ExprFormatError(f"unknown node kind {kind!r}")


def _require(m: Manifold, want: Manifold, kind: str):
    if m is not want:
        raise ExprFormatError(f"{kind!r} node requires manifold {want.value}, got {m.value}")


def expr_to_dict(e: DiffeoExpr) -> dict:
    return {"manifold": e.manifold.value, "expr": expr_to_node(e)}


def dict_to_expr(d: dict) -> DiffeoExpr:
    try:
        m = Manifold(d["manifold"])
    except (KeyError, TypeError, ValueError):
        raise ExprFormatError("document lacks a valid 'manifold' tag")
    return node_to_expr(d["expr"], m)


def dumps_expr(e: DiffeoExpr) -> str:
    return json.dumps(expr_to_dict(e), sort_keys=True, indent=2)


def loads_expr(text: str) -> DiffeoExpr:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprFormatError(f"invalid JSON: {exc}") from exc
    return dict_to_expr(d)
