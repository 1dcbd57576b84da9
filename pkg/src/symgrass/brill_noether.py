"""Expected-dimension integer formulas for section loci of rank-2 bundles.

Everything here is plain arbitrary-precision integer arithmetic. Binomials
use the clamp-at-zero convention binom2(m) = m(m-1)/2 for m >= 2, else 0,
so every formula is total even when the auxiliary offsets exceed the section
count.
"""

from __future__ import annotations

from .errors import GuardViolation


def binom2(m: int) -> int:
    """m choose 2, clamped to 0 below m = 2."""
    return m * (m - 1) // 2 if m >= 2 else 0


def rho(r: int, d: int, k: int, g: int) -> int:
    """Expected dimension r^2(g-1) + 1 - k(k - d + r(g-1)) of the section locus."""
    return r * r * (g - 1) + 1 - k * (k - d + r * (g - 1))


def rho_omega(k: int, g: int) -> int:
    """Canonical-determinant expected dimension 3g - 3 - binom2(k+1)."""
    return 3 * g - 3 - binom2(k + 1)


def rho1(d: int, k: int, g: int, delta: int) -> int:
    """Fixed-determinant bound rho(2,d,k,g) - g + binom2(k - delta).

    delta is the smallest degree of an effective divisor making the
    determinant special; it is caller-supplied (computing it needs a curve
    model, which at genus zero is the twist arithmetic of the residues
    module).
    """
    if delta < 0:
        raise GuardViolation("delta must be nonnegative")
    return rho(2, d, k, g) - g + binom2(k - delta)


def rho2(d: int, k: int, g: int) -> int:
    """Doubly special fixed-determinant bound rho(2,d,k,g) - g + 2*binom2(k)."""
    return rho(2, d, k, g) - g + 2 * binom2(k)


def new_comps(k: int, g: int, delta: int, m: int) -> bool:
    """Whether the corrected bounds exceed the naive expected dimension.

    True when binom2(k - delta) > g, or when m >= 2 and 2*binom2(k) > g;
    in either case a nonempty locus must have strictly larger dimension
    than the uncorrected count predicts.
    """
    if binom2(k - delta) > g:
        return True
    return m >= 2 and 2 * binom2(k) > g


def codim_bound_single(k: int, r: int, s: int, t: int, delta: int) -> int:
    """Codimension bound k(2r - s - t) - binom2(k - delta) for the locus of
    k-subbundles inside both a degeneracy-(s - 2*delta) subbundle of rank s
    and an isotropic subbundle of rank t.

    Guards: k <= t, s <= r, 2t <= r; under them (and k >= 1) the bound is
    positive.
    """
    _check_guards(k, r, s, t)
    if delta < 0:
        raise GuardViolation("delta must be nonnegative")
    return k * (2 * r - s - t) - binom2(k - delta)


def codim_bound_double(k: int, r: int, s: int, t: int) -> int:
    """Codimension bound k(2r - s - t) - 2*binom2(k) in the two-form case."""
    _check_guards(k, r, s, t)
    return k * (2 * r - s - t) - 2 * binom2(k)


def _check_guards(k, r, s, t):
    if k < 0:
        raise GuardViolation("k must be nonnegative")
    if not (k <= t and s <= r and 2 * t <= r):
        raise GuardViolation(
            f"guards k <= t, s <= r, 2t <= r fail for k={k}, r={r}, s={s}, t={t}"
        )
