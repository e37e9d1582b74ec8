"""Shared exception types."""

from __future__ import annotations


class ParseError(ValueError):
    """Syntax error in an element or polynomial literal.

    Carries the offending source text and a 0-based position.
    """

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} (at position {pos} in {text!r})")
        self.text = text
        self.pos = pos


class ValidationError(ValueError):
    """A digit system (or quotient ring modulus) violates its invariants.

    ``violations`` lists every broken invariant, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
