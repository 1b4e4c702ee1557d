"""Exceptions shared across the library.

The CLI maps these onto exit codes: bad input -> 1, resource caps -> 2,
internal invariant failures -> 3.
"""


class ParseError(ValueError):
    """Malformed input text (graph6 lines, adjacency or matrix files)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FactorizationError(RuntimeError):
    """Factoring budget exhausted; carries the partial factorization."""

    def __init__(self, n, factored, cofactor):
        super().__init__(
            f"could not fully factor {n}: unfactored cofactor {cofactor}"
        )
        self.n = n
        self.factored = dict(factored)
        self.cofactor = cofactor


class SearchCapExceeded(RuntimeError):
    """A configured enumeration or backtracking cap was hit."""


class InvariantError(RuntimeError):
    """An internal consistency check failed.

    This signals a bug (or a falsified theorem), never bad user input.
    """


class ConjugationError(ValueError):
    """The conjugated matrix Q^T A Q is not a 0-1 adjacency matrix."""
