"""Exception types shared across the package."""


class DefbilatError(Exception):
    """Base class for all library errors."""


class ValidationError(DefbilatError):
    """A structural invariant failed at construction time."""


class NotSemiConstant(DefbilatError):
    """A linking map is not constant on some order component."""


class LengthMismatch(DefbilatError):
    """Layer and link counts do not line up."""


class BadIndices(DefbilatError):
    """Level indices out of range (requires 0 <= m <= n)."""


class SizeOverflow(DefbilatError):
    """A construction would exceed the configured size guard."""


class IsoFailure(DefbilatError):
    """An isomorphism that must exist could not be verified (internal bug)."""


class ClosureFailure(DefbilatError):
    """A universe that must be operation-closed is not (internal bug)."""


class NotInVariety(DefbilatError):
    """Algebra is not a member of the target variety (separation fails)."""


class NotInQuasivariety(DefbilatError):
    """Algebra is not a member of the target quasivariety."""


class InvalidDualObject(DefbilatError):
    """A multisorted structure violates the dual-category membership conditions."""


class InvalidSequence(DefbilatError):
    """A default sequence violates the complement or homomorphism conditions."""


class NotInUniverse(DefbilatError):
    """Tuple does not belong to the product universe."""


class NoWitness(DefbilatError):
    """No optimality witness exists where theory says one must."""


class TrivialAlgebra(DefbilatError):
    """Operation undefined on one-element algebras."""


class InvariantViolation(DefbilatError):
    """A mathematically guaranteed invariant failed (internal bug)."""
