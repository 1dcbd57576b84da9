"""Exception taxonomy shared across the package.

CLI exit-code mapping: precondition and guard violations exit 2, resource
ceilings exit 3, and InvariantViolation (a cross-check that two independent
computations disagreed) exits 4.
"""


class SymgrassError(Exception):
    """Base class for all package errors."""


class PreconditionError(SymgrassError):
    """An operation was called outside its contract (exit code 2)."""


class SplitFailure(PreconditionError):
    """A polynomial has a factor with no root in any supported field.

    Raised over the rationals when an irrational factor remains; callers
    should fall back to rank-based checks that need no eigenvalues.
    """


class FitMismatch(SymgrassError):
    """Interpolated counting polynomial failed held-out validation."""


class NoWitnessNeeded(PreconditionError):
    """Degeneration witness requested on a minimal stratum point."""


class NotIsotropic(PreconditionError):
    """A subspace required to be isotropic is not."""


class NotSurjective(PreconditionError):
    """A pairing matrix required to have full row rank does not."""


class MalformedCertificate(PreconditionError):
    """A dependence certificate or normal form fails structural checks."""


class SupportCollision(PreconditionError):
    """Divisor support meets the zeros or poles of the twisting function."""


class DegreeMismatch(PreconditionError):
    """Rational function has the wrong shape for the requested line-bundle map."""


class VanishingViolated(PreconditionError):
    """A cohomology-vanishing hypothesis fails for the chosen twists."""


class GuardViolation(PreconditionError):
    """Integer-formula guard inequalities are not satisfied."""


class CeilingExceeded(SymgrassError):
    """Enumeration would visit more subspaces than the configured ceiling (exit 3)."""


class InvariantViolation(SymgrassError):
    """Two independent computations that must agree did not (exit 4).

    This is always either a bug or a genuine counterexample; campaigns
    report it loudly and abort.
    """
