"""Shared exception types."""


class PartcertError(Exception):
    pass


class NotAUnit(PartcertError):
    """Element has a nontrivial common factor with the modulus."""


class NonzeroValuation(PartcertError):
    """Series inversion requires a unit constant term at valuation 0."""


class RingMismatch(PartcertError):
    """Operands live over different coefficient rings."""


class InsufficientPrecision(PartcertError):
    """Stored coefficients do not reach the requested depth."""


class SpanViolation(PartcertError):
    """A Hecke image left the span of the basis (fatal: indicates a bug)."""


class MatchFailure(PartcertError):
    """Coefficient matching against a basis failed beyond the solve block."""

    def __init__(self, msg, slot=None):
        super().__init__(msg)
        self.slot = slot


class CapExceeded(PartcertError):
    """Matrix order search exceeded the iteration cap."""

    def __init__(self, msg, partial_power=None, cap=None):
        super().__init__(msg)
        self.partial_power = partial_power
        self.cap = cap


class OverflowBudget(PartcertError):
    """A partition-table argument exceeds the configured budget."""


class InadmissibleN(PartcertError):
    """An n violates the admissibility conditions of the congruence."""


class MismatchWithTheorem(PartcertError):
    """A runtime consistency check contradicts a closed-form case value."""


class NotApplicable(PartcertError):
    """None of the sporadic-congruence cases applies to the given data."""
