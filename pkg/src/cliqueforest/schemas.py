"""Published JSON schemas for the CLI output documents."""

_DECIMAL = {"type": "string", "pattern": r"^-?(\d+\.?\d*|\.\d+|inf)([eE][+-]?\d+)?$"}
_EXPR_NODE = {"$ref": "#/$defs/node"}

_NODE_DEFS = {
    "node": {
        "type": "object",
        "required": ["kind"],
        "properties": {
            "kind": {
                "enum": [
                    "identity", "mobius", "rotation", "sine_shear", "translation",
                    "perturbed", "perturbed_lift", "compose", "inverse", "power",
                ]
            },
            "alpha": _DECIMAL,
            "theta": _DECIMAL,
            "a": _DECIMAL,
            "c": _DECIMAL,
            "exponent": {"type": "integer"},
            "bumps": {"type": "array"},
            "parts": {"type": "array", "items": {"$ref": "#/$defs/node"}},
            "inner": {"$ref": "#/$defs/node"},
        },
    }
}

EXPR_SCHEMA = {
    "type": "object",
    "required": ["manifold", "expr"],
    "properties": {"manifold": {"enum": ["I", "S1", "R"]}, "expr": _EXPR_NODE},
    "$defs": _NODE_DEFS,
}

DECISION_SCHEMA = {
    "type": "object",
    "required": ["embeddable", "manifold"],
    "properties": {
        "embeddable": {"type": "boolean"},
        "manifold": {"enum": ["I", "S1"]},
        "clique_forest": {
            "type": "object",
            "required": ["components"],
            "properties": {
                "components": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer"}},
                }
            },
        },
        "missing_edge": {
            "type": "object",
            "required": ["u", "v", "path"],
            "properties": {
                "u": {"type": "integer"},
                "v": {"type": "integer"},
                "path": {"type": "array", "items": {"type": "integer"}},
            },
        },
    },
}

ASSIGNMENT_SCHEMA = {
    "type": "object",
    "required": ["graph", "manifold", "clique_forest", "alphas", "layout", "f", "gens"],
    "properties": {
        "manifold": {"enum": ["I", "S1"]},
        "graph": {
            "type": "object",
            "required": ["n", "edges"],
            "properties": {
                "n": {"type": "integer"},
                "edges": {"type": "array"},
            },
        },
        "alphas": {
            "type": "object",
            "required": ["alphas", "k_bound", "min_relation"],
        },
        "layout": {"type": "array"},
        "f": _EXPR_NODE,
        "gens": {"type": "array", "items": _EXPR_NODE},
        "state": {"type": ["object", "null"]},
    },
    "$defs": _NODE_DEFS,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "ok", "manifold", "grid_n", "tol", "word_len", "truncation_note",
        "edge_checks", "non_edge_checks", "margins",
    ],
    "properties": {
        "ok": {"type": "boolean"},
        "manifold": {"enum": ["I", "S1"]},
        "grid_n": {"type": "integer"},
        "tol": {"type": "number"},
        "word_len": {"type": "integer"},
        "edge_checks": {"type": "array"},
        "non_edge_checks": {"type": "array"},
        "margins": {"type": "array"},
        "margin_failures": {"type": "array"},
        "notes": {"type": "array"},
    },
}

FIXPOINTS_SCHEMA = {
    "type": "object",
    "required": ["points", "flags", "residual_tol", "degenerate", "grid_n"],
    "properties": {
        "points": {"type": "array", "items": {"type": "number"}},
        "flags": {"type": "array", "items": {"enum": ["transverse", "tangency-suspect"]}},
        "residual_tol": {"type": "number"},
        "interval_signs": {"type": "array", "items": {"type": "integer"}},
        "degenerate": {"type": "boolean"},
        "grid_n": {"type": "integer"},
    },
}

COMMGRAPH_SCHEMA = {
    "type": "object",
    "required": ["graph", "manifold", "tol", "power_bound", "grid_n", "completeness"],
    "properties": {
        "graph": {"type": "object"},
        "manifold": {"enum": ["I", "S1", "R"]},
        "tol": {"type": "number"},
        "power_bound": {"type": "integer"},
        "grid_n": {"type": "integer"},
        "residuals": {"type": "array"},
        "completeness": {
            "type": "object",
            "required": ["ok", "components"],
        },
    },
}

OBSTRUCTION_SCHEMA = {
    "type": "object",
    "required": ["found"],
    "properties": {
        "found": {"type": "boolean"},
        "certificate": {
            "type": ["object", "null"],
            "required": ["g1", "g2", "h1", "h2", "facts"],
        },
        "center_nonabelian": {"type": "boolean"},
        "center_witness": {"type": ["object", "null"]},
        "ball_size": {"type": "integer"},
    },
}
