"""Automata, the model file format, products, testers and validation."""

from .analysis import Report, check_deterministic, validate_spec, validate_tp
from .automaton import ActionDecl, Automaton, Edge, ModelError
from .completion import absorb_inputs, complete_tp
from .parser import ModelSyntaxError, load_model, parse_guard, parse_model, to_text
from .product import product, restrict_reachable
from .tester import FAIL, NondeterministicError, build_tester

__all__ = [
    "FAIL", "ActionDecl", "Automaton", "Edge", "ModelError", "ModelSyntaxError",
    "NondeterministicError", "Report", "absorb_inputs", "build_tester",
    "check_deterministic", "complete_tp", "load_model", "parse_guard",
    "parse_model", "product", "restrict_reachable", "to_text",
    "validate_spec", "validate_tp",
]
