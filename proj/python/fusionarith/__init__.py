"""Exact arithmetic for fusion-category classification searches."""

import json as _json

from ._core import (
    CASES_DIR,
    FusionArithError,
    InfeasibleInstance,
    MixedFieldError,
    ParseError,
    PreconditionError,
    SchemaError,
    UnsupportedDegree,
    __version__,
    decompositions,
    discriminant,
    factor,
    formal_codegrees,
    galois_permutation,
    galois_structure,
    in_cyclic_cubic_field,
    is_d_number,
    is_totally_positive,
    is_totally_real,
    normalize,
    passes_cyclotomic_test,
    rational_roots,
    real_root_count,
    run_case_json,
    run_case_text,
)


def run_case(case, timing=False):
    """Run a case given as a dict or JSON text; returns the report as a dict."""
    text = case if isinstance(case, str) else _json.dumps(case)
    return _json.loads(run_case_json(text, timing))
