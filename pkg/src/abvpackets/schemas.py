"""JSON schemas for every document the CLI emits (schema version 1)."""

_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_strings = {"type": "array", "items": {"type": "string"}}

ORBIT_SPACE = {
    "type": "object",
    "required": ["schema", "lambda", "dimV", "orbits"],
    "properties": {
        "schema": {"const": 1},
        "lambda": {"type": "string"},
        "dimV": {"type": "integer", "minimum": 0},
        "orbits": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["multisegment", "dim", "ranks"],
                "properties": {
                    "multisegment": {"type": "string"},
                    "dim": {"type": "integer", "minimum": 0},
                    "ranks": {"type": "object",
                              "additionalProperties": {"type": "integer", "minimum": 1}},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

MATRICES = {
    "type": "object",
    "required": ["schema", "lambda", "orbits", "m", "c"],
    "properties": {
        "schema": {"const": 1},
        "lambda": {"type": "string"},
        "orbits": _strings,
        "m": _matrix,
        "c": _matrix,
    },
    "additionalProperties": False,
}

LIFT = {
    "type": "object",
    "required": ["schema", "psi", "lambda", "levi", "G_orbits", "M_orbits",
                 "eps_star_sts", "eps_star_ssim", "lift_std", "lift_sim"],
    "properties": {
        "schema": {"const": 1},
        "psi": {"type": "string"},
        "lambda": {"type": "string"},
        "levi": _strings,
        "G_orbits": _strings,
        "M_orbits": {"type": "array", "items": _strings},
        "eps_star_sts": _matrix,
        "eps_star_ssim": _matrix,
        "lift_std": _matrix,
        "lift_sim": _matrix,
    },
    "additionalProperties": False,
}

PACKET = {
    "type": "object",
    "required": ["schema", "psi", "lambda", "pi_psi", "C_psi", "d_psi", "abv_packet"],
    "properties": {
        "schema": {"const": 1},
        "psi": {"type": "string"},
        "lambda": {"type": "string"},
        "pi_psi": {"type": "string"},
        "C_psi": {"type": "string"},
        "d_psi": {"type": "integer", "minimum": 0},
        "abv_packet": _strings,
    },
    "additionalProperties": False,
}

SQUARE_REPORT = {
    "type": "object",
    "required": ["psi", "lambda", "square", "schema"],
    "properties": {
        "schema": {"const": 1},
        "psi": {"type": "string"},
        "lambda": {"type": "string"},
        "square": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["F", "basis", "top", "left", "bottom", "right", "pass"],
                "properties": {
                    "F": {"type": "string"},
                    "basis": {"enum": ["IC", "std"]},
                    "top": {"type": "integer"},
                    "left": {"type": "integer"},
                    "bottom": {"type": "integer"},
                    "right": {"type": "integer"},
                    "pass": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

SELFTEST = {
    "type": "object",
    "required": ["schema", "matched", "total", "examples"],
    "properties": {
        "schema": {"const": 1},
        "matched": {"type": "integer"},
        "total": {"type": "integer"},
        "examples": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "match"],
                "properties": {"name": {"type": "string"}, "match": {"type": "boolean"}},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

BY_COMMAND = {
    "orbits": ORBIT_SPACE,
    "matrices": MATRICES,
    "lift": LIFT,
    "packet": PACKET,
    "check-square": SQUARE_REPORT,
    "selftest": SELFTEST,
}
