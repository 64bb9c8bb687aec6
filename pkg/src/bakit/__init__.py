"""Basic Arithmetic toolkit: syntax, proof checkers, proof transformations and Kripke semantics."""
from .parser import ParseError, parse_formula, parse_lk_sequent, parse_sequent, parse_term
from .syntax import Sequent, print_formula, substitute

__version__ = "0.1.0"

__all__ = [
    "ParseError", "Sequent", "parse_formula", "parse_lk_sequent", "parse_sequent", "parse_term",
    "print_formula", "substitute",
]
