"""GCN-guided solver for maximum independent set, vertex cover, clique and SAT."""

import json

from ._core import (
    CnfFormula,
    ContractViolation,
    DivergenceError,
    Graph,
    InternalError,
    Kernelization,
    Model,
    ParseError,
    ResourceError,
    complement,
    dpll_sat,
    exact_mis,
    forward,
    init_model,
    is_independent_set,
    parse_cnf,
    parse_edge_list,
    planted_3sat,
    read_model,
    reduce,
    sat_to_mis,
    tree_search,
    two_improve,
    verify_local_optimum,
    write_cnf,
    write_model,
)
from ._core import solve_json as _solve_json


def solve(problem, text, format, model=None, **options):
    """Solve an instance given as text; returns the verified report as a dict."""
    return json.loads(_solve_json(problem, text, format, model, **options))


__all__ = [
    "CnfFormula",
    "ContractViolation",
    "DivergenceError",
    "Graph",
    "InternalError",
    "Kernelization",
    "Model",
    "ParseError",
    "ResourceError",
    "complement",
    "dpll_sat",
    "exact_mis",
    "forward",
    "init_model",
    "is_independent_set",
    "parse_cnf",
    "parse_edge_list",
    "planted_3sat",
    "read_model",
    "reduce",
    "sat_to_mis",
    "solve",
    "tree_search",
    "two_improve",
    "verify_local_optimum",
    "write_cnf",
    "write_model",
]
