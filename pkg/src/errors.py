#!/usr/bin/env python
"""
Agglom Errors
Exception hierarchy shared by every module. All of them are ValueErrors so
callers that only care about bad input can catch the builtin.
"""


class AgglomError(ValueError):
    """Base class for domain errors surfaced by the CLI with exit status 1."""


class GraphError(AgglomError):
    """Malformed graph input or a graph outside an operation's domain."""


class AgglomerationError(AgglomError):
    """Weights violating the vertex >= incident edge rule, or mismatched graphs."""


class FactorizationError(AgglomError):
    """A factorization that does not factor the element it claims to."""


class DiophantineError(AgglomError):
    """Dimension mismatches and invalid lifts for Diophantine monoids."""


class ResourceLimitError(AgglomError):
    """Input too large for an exact desk-scale computation."""


class RingSpecError(AgglomError):
    """Invalid Bass ring spectrum description."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics) or "invalid ring spec")


class VerificationError(AgglomError):
    """An internal cross-check failed; carries the offending vector."""

    def __init__(self, message, counterexample=None):
        self.counterexample = counterexample
        if counterexample is not None:
            message = "%s (counterexample: %s)" % (message, counterexample)
        super().__init__(message)
