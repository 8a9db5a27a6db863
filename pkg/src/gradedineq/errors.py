"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ParseError -> 1, SemanticError -> 2,
BudgetExceededError -> 3.
"""

from __future__ import annotations


class GradedIneqError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GradedIneqError):
    """Malformed input text (theory DSL, query, model or proof file)."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


class SemanticError(GradedIneqError):
    """Well-formed input that violates a declared contract."""


class UnknownSymbolError(SemanticError):
    pass


class ArityError(SemanticError):
    pass


class DegreeError(SemanticError):
    """Degree literal outside the declared lattice (bad numerator or denominator)."""


class LatticeMismatchError(SemanticError):
    """Operands belong to different lattices."""


class UniverseMismatchError(SemanticError):
    """L-set operation across different universes."""


class EvaluationOutOfBoundsError(SemanticError):
    """Term evaluation hit an undefined entry of a partial operation table."""


class QueryOutsideUniverseError(SemanticError):
    """Queried inequality has a side outside the bounded term universe."""


class AssumptionOutsideUniverseError(SemanticError):
    """Theory prescribes a degree for a pair outside the bounded universe."""


class NoDerivationError(SemanticError):
    """Proof extraction requested for a pair with no recorded derivation."""


class MalformedModelError(SemanticError):
    """Model description file violates its schema."""


class PreorderViolationError(SemanticError):
    """Relation offered as a compatible preorder fails one of its conditions."""

    def __init__(self, condition: str, witness=None):
        super().__init__(f"not a compatible preorder: {condition} fails"
                         + (f" at {witness}" if witness is not None else ""))
        self.condition = condition
        self.witness = witness


class BudgetExceededError(GradedIneqError):
    """Enumeration budget exhausted; partial results are not silently used."""

    def __init__(self, message: str, candidates_seen: int = 0):
        super().__init__(message)
        self.candidates_seen = candidates_seen
