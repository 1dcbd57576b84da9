"""Enumeration of subspaces over finite fields and stratified isotropic counts.

Counting is exact and deterministic: pivot patterns are visited in
colexicographic order with free entries in odometer order, and reports merge
per-pattern results in that fixed order, so parallel scheduling cannot change
a single byte of output.

Besides raw counts, the module carries the closed-form counting polynomial of
each stratum, obtained from the tower fibration (choose an i-dimensional
subspace of the radical, then extend one isotropic step at a time, then quo
out the flag redundancy). Enumerated counts at small q cross-validate the
polynomial; its degree is the fiber dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    CeilingExceeded,
    FitMismatch,
    InvariantViolation,
    NoWitnessNeeded,
    NotIsotropic,
    PreconditionError,
)
from .fields import Field, GF, PrimeField, QQ
from .forms import (
    AlternatingForm,
    Subspace,
    is_isotropic,
    orthogonal_complement,
    radical_intersection_dim,
    restrict,
)
from .matrices import Matrix
from .polynomials import Polynomial, lagrange_interpolate

DEFAULT_CEILING = 10**8


def binom2(m: int) -> int:
    """m choose 2 clamped at zero for m < 2; the convention used throughout."""
    return m * (m - 1) // 2 if m >= 2 else 0


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-space over a q-element field."""
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return gaussian_binomial(n - 1, k - 1, q) * (q**n - 1) // (q**k - 1)


def pivot_patterns_colex(n: int, k: int):
    """All ascending k-tuples of column indices, in colexicographic order."""
    return sorted(itertools.combinations(range(n), k), key=lambda t: t[::-1])


def _pattern_free_slots(n, k, pattern):
    pivset = set(pattern)
    slots = []
    for a in range(k):
        for c in range(pattern[a] + 1, n):
            if c not in pivset:
                slots.append((a, c))
    return slots


class SubspaceStream:
    """Deterministic stream of all k-subspaces of F^n in canonical echelon form.

    Partitioned by pivot pattern; the total count equals the Gaussian
    binomial, which is also the resource guard.
    """

    def __init__(self, field: Field, n: int, k: int, ceiling: int = DEFAULT_CEILING):
        if not field.is_finite:
            raise PreconditionError("subspace enumeration needs a finite field")
        if not (0 <= k <= n):
            raise PreconditionError("need 0 <= k <= n")
        self.field = field
        self.n = n
        self.k = k
        self.q = field.order
        self.count = gaussian_binomial(n, k, self.q)
        if self.count > ceiling:
            raise CeilingExceeded(
                f"{self.count} subspaces exceed the ceiling {ceiling}"
            )

    def partitions(self):
        """(pivot_pattern, generator) pairs in colexicographic pattern order."""
        for pattern in pivot_patterns_colex(self.n, self.k):
            yield pattern, self._pattern_stream(pattern)

    def _pattern_stream(self, pattern):
        F = self.field
        n, k = self.n, self.k
        slots = _pattern_free_slots(n, k, pattern)
        elements = list(F.elements())
        z, o = F.zero(), F.one()
        template = [[z] * n for _ in range(k)]
        for a, p in enumerate(pattern):
            template[a][p] = o
        for values in itertools.product(elements, repeat=len(slots)):
            rows = [list(r) for r in template]
            for (a, c), v in zip(slots, values):
                rows[a][c] = v
            yield Subspace(F, n, rows, already_reduced=True)

    def __iter__(self):
        for _, stream in self.partitions():
            yield from stream

    def __len__(self):
        return self.count


def enumerate_subspaces(n: int, k: int, field_or_q, ceiling: int = DEFAULT_CEILING) -> SubspaceStream:
    """SubspaceStream over GF(q); accepts a field object or a prime power q."""
    if isinstance(field_or_q, Field):
        field = field_or_q
    else:
        q = int(field_or_q)
        field = _field_of_order(q)
    return SubspaceStream(field, n, k, ceiling=ceiling)


def _field_of_order(q: int) -> Field:
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise PreconditionError(f"{q} is not a prime power")
            return GF(p, e)
    raise PreconditionError(f"{q} is not a prime power")


# ------------------------------------------------------------- strata counts


@dataclass(frozen=True)
class StratumReport:
    """Isotropic subspace counts bucketed by radical-intersection dimension."""

    r: int
    p: int
    delta: int
    k: int
    q: int
    strata: tuple  # ((i, count), ...) ascending by i, zero buckets omitted
    total: int

    def counts(self) -> dict:
        return dict(self.strata)

    def to_json_dict(self) -> dict:
        return {
            "params": {
                "r": self.r,
                "p": self.p,
                "delta": self.delta,
                "k": self.k,
                "q": self.q,
            },
            "strata": {str(i): c for i, c in self.strata},
            "total": self.total,
        }


def strata_counts(
    form: AlternatingForm,
    k: int,
    ceiling: int = DEFAULT_CEILING,
    jobs: int = 1,
    force_pure: bool = False,
) -> StratumReport:
    """Count all isotropic k-subspaces, bucketed by dim(V meet radical).

    Prime fields run on the jitted per-pattern kernel (optionally on
    `jobs` threads); other finite fields take the generic path. Both paths
    produce identical reports.
    """
    F = form.field
    r = form.dim
    if not F.is_finite:
        raise PreconditionError("strata counting needs a finite field")
    if not (0 <= k <= r):
        raise PreconditionError("need 0 <= k <= r")
    q = F.order
    if gaussian_binomial(r, k, q) > ceiling:
        raise CeilingExceeded(
            f"{gaussian_binomial(r, k, q)} subspaces exceed the ceiling {ceiling}"
        )
    if k == 0:
        return _make_report(form, k, {0: 1})
    if isinstance(F, PrimeField) and not force_pure:
        counts = _strata_fast_path([form], k, bucket=True, jobs=jobs, ceiling=ceiling)
    else:
        counts = _strata_pure_path(form, k)
    return _make_report(form, k, counts)


def _make_report(form, k, counts):
    items = tuple(sorted((i, c) for i, c in counts.items() if c))
    return StratumReport(
        r=form.dim,
        p=form.degeneracy,
        delta=form.delta,
        k=k,
        q=form.field.order,
        strata=items,
        total=sum(c for _, c in items),
    )


def _strata_pure_path(form, k):
    counts: dict = {}
    stream = SubspaceStream(form.field, form.dim, k, ceiling=DEFAULT_CEILING)
    for v in stream:
        if is_isotropic(form, v):
            i = radical_intersection_dim(form, v)
            counts[i] = counts.get(i, 0) + 1
    return counts


def _strata_fast_path(forms, k, bucket, jobs, ceiling):
    import numpy as np

    from ._strata_fast import count_pattern

    F = forms[0].field
    r = forms[0].dim
    p = F.order
    grams = np.zeros((len(forms), r, r), dtype=np.int64)
    for g, form in enumerate(forms):
        for i in range(r):
            for j in range(r):
                grams[g, i, j] = form.gram[i, j] % p
    inv_table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv_table[a] = pow(a, p - 2, p)
    patterns = pivot_patterns_colex(r, k)

    def run(pattern):
        counts = np.zeros(k + 1, dtype=np.int64)
        piv = np.array(pattern, dtype=np.int64)
        total = count_pattern(
            r, k, p, grams, piv, inv_table, bucket, ceiling, counts
        )
        if total < 0:
            raise CeilingExceeded(f"ceiling {ceiling} exceeded during enumeration")
        return counts

    if jobs > 1 and len(patterns) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, patterns))
    else:
        results = [run(pat) for pat in patterns]
    merged: dict = {}
    for counts in results:  # fixed colex order regardless of scheduling
        for i in range(k + 1):
            if counts[i]:
                merged[i] = merged.get(i, 0) + int(counts[i])
    return merged


def count_multi_isotropic(
    forms,
    k: int,
    ceiling: int = DEFAULT_CEILING,
    jobs: int = 1,
    force_pure: bool = False,
) -> int:
    """Number of k-subspaces isotropic for every listed form simultaneously.

    Equivalently, isotropic for every linear combination of the forms.
    """
    forms = list(forms)
    if not forms:
        raise PreconditionError("need at least one form")
    F = forms[0].field
    r = forms[0].dim
    if any(f.field != F or f.dim != r for f in forms):
        raise PreconditionError("forms must share one ambient space")
    if gaussian_binomial(r, k, F.order) > ceiling:
        raise CeilingExceeded("enumeration ceiling exceeded")
    if k == 0:
        return 1
    if isinstance(F, PrimeField) and not force_pure:
        counts = _strata_fast_path(forms, k, bucket=False, jobs=jobs, ceiling=ceiling)
        return sum(counts.values())
    total = 0
    for v in SubspaceStream(F, r, k, ceiling=ceiling):
        if all(is_isotropic(f, v) for f in forms):
            total += 1
    return total


# --------------------------------------------------- counting polynomials


@lru_cache(maxsize=None)
def gaussian_binomial_poly(n: int, k: int) -> Polynomial:
    """The Gaussian binomial as an integer polynomial in q (q-Pascal rule)."""
    if k < 0 or k > n:
        return Polynomial.zero(QQ)
    if k == 0 or k == n:
        return Polynomial.one(QQ)
    qk = Polynomial(QQ, [0] * k + [1])
    return gaussian_binomial_poly(n - 1, k - 1).add(
        qk.mul(gaussian_binomial_poly(n - 1, k))
    )


def _geometric_poly(t: int) -> Polynomial:
    """1 + q + ... + q^(t-1)."""
    return Polynomial(QQ, [1] * t) if t > 0 else Polynomial.one(QQ)


@lru_cache(maxsize=None)
def _flag_count_poly(m: int) -> Polynomial:
    out = Polynomial.one(QQ)
    for d in range(1, m + 1):
        out = out.mul(_geometric_poly(d))
    return out


def stratum_window(r: int, delta: int, k: int):
    """Admissible radical-intersection dimensions: max(0, k-delta) .. min(k, p)."""
    p = r - 2 * delta
    return max(0, k - delta), min(k, p)


def stratum_count_polynomial(r: int, delta: int, k: int, i: int) -> Polynomial:
    """Counting polynomial in q of the isotropic k-subspaces meeting the
    radical in dimension exactly i, for a form of rank 2*delta on an r-space.

    Built from the extension tower: a point is an i-subspace of the radical
    followed by k-i one-step isotropic extensions staying clear of the
    radical, divided by the number of complete flags of the quotient. The
    division is exact; its exactness is asserted.
    """
    p = r - 2 * delta
    lo, hi = stratum_window(r, delta, k)
    if not (lo <= i <= hi):
        return Polynomial.zero(QQ)
    total = gaussian_binomial_poly(p, i)
    qpow = Polynomial(QQ, [0] * (p - i) + [1]) if p - i > 0 else Polynomial.one(QQ)
    for j in range(1, k - i + 1):
        step = qpow.mul(_geometric_poly(2 * (delta - j + 1)))
        total = total.mul(step)
    return total.exact_div(_flag_count_poly(k - i))


def total_count_polynomial(r: int, delta: int, k: int) -> Polynomial:
    """Counting polynomial of all isotropic k-subspaces (sum over strata)."""
    lo, hi = stratum_window(r, delta, k)
    out = Polynomial.zero(QQ)
    for i in range(lo, hi + 1):
        out = out.add(stratum_count_polynomial(r, delta, k, i))
    return out


def expected_total_degree(r: int, delta: int, k: int) -> int:
    """k(r-k) - C(k,2) + C(k-delta,2), the fiber dimension of the full locus."""
    return k * (r - k) - binom2(k) + binom2(k - delta)


def expected_stratum_degree(r: int, delta: int, k: int, i: int) -> int:
    """i(p-i) + (k-i)(r-k) - C(k-i,2) with p = r - 2*delta."""
    p = r - 2 * delta
    return i * (p - i) + (k - i) * (r - k) - binom2(k - i)


# ------------------------------------------------------------ dimension fits


@dataclass(frozen=True)
class DimensionFit:
    """Exact interpolation of counts with one held-out validation sample."""

    samples: tuple  # ((q, count), ...) used for interpolation
    holdout: tuple  # (q, count) validated against the fit
    coefficients: tuple  # integer coefficients, ascending
    degree: int

    def poly(self) -> Polynomial:
        return Polynomial(QQ, [Fraction(c) for c in self.coefficients])


def fit_dimension(samples: dict) -> DimensionFit:
    """Lagrange-interpolate counts in q and validate on the largest sample.

    The samples must oversample the true degree (at least degree + 2 points)
    or the held-out check fails. All coefficients must come out integral.
    Raises FitMismatch on either failure; the caller is seeing a count that
    is not polynomial in q on the sampled range, or a bug.
    """
    if len(samples) < 2:
        raise PreconditionError("need at least two samples")
    pts = sorted((int(q), int(c)) for q, c in samples.items())
    train, holdout = pts[:-1], pts[-1]
    poly = lagrange_interpolate(
        [(Fraction(q), Fraction(c)) for q, c in train], QQ
    )
    for c in poly.coeffs:
        if c.denominator != 1:
            raise FitMismatch(f"non-integer coefficient {c} in interpolation")
    hq, hc = holdout
    if poly.eval(Fraction(hq)) != hc:
        raise FitMismatch(
            f"held-out sample q={hq} expected {hc}, fit gives {poly.eval(Fraction(hq))}"
        )
    return DimensionFit(
        samples=tuple(train),
        holdout=holdout,
        coefficients=tuple(int(c) for c in poly.coeffs),
        degree=poly.degree,
    )


def fit_from_polynomial(poly: Polynomial, degree_hint: int | None = None) -> DimensionFit:
    """Build a DimensionFit by sampling a known counting polynomial at primes."""
    deg = poly.degree if degree_hint is None else degree_hint
    need = max(deg + 2, 2)
    qs = _first_primes(need)
    samples = {q: int(poly.eval(Fraction(q))) for q in qs}
    return fit_dimension(samples)


def _first_primes(count: int):
    out = []
    cand = 2
    while len(out) < count:
        if all(cand % p for p in out):
            out.append(cand)
        cand += 1
    return out


# ------------------------------------------------------ degeneration witness


@dataclass(frozen=True)
class WitnessRecord:
    """Explicit one-parameter family pushing a stratum point into the next one.

    The family replaces basis vector `replaced_index` of the adapted basis by
    itself plus t * vector; `checks` holds, per nonzero t probed, the triple
    (t, stayed isotropic, radical intersection dimension).
    """

    vector: tuple
    replaced_index: int
    adapted_basis: tuple
    checks: tuple
    start_intersection: int

    @property
    def ok(self) -> bool:
        want = self.start_intersection - 1
        return all(iso and dim == want for _, iso, dim in self.checks)


def degeneration_witness(form: AlternatingForm, f0: Subspace) -> WitnessRecord:
    """Move an isotropic subspace one stratum down along an explicit family.

    Requires f0 isotropic with i = dim(f0 meet radical) strictly above the
    minimal stratum max(0, k - delta); raises NoWitnessNeeded at the minimal
    stratum. The witness vector is the first echelon basis vector of the
    orthogonal complement of f0 lying outside span(radical, f0); the family
    is verified pointwise for every nonzero t (finite fields) or a fixed
    probe set (infinite fields).
    """
    F = form.field
    k = f0.dim
    if not is_isotropic(form, f0):
        raise NotIsotropic("witness construction needs an isotropic subspace")
    rad = form.radical_space
    inter = f0.intersect(rad)
    i = inter.dim
    minimal = max(0, k - form.delta)
    if i < minimal:
        raise InvariantViolation(
            f"isotropic subspace meets the radical in dimension {i} < {minimal}"
        )
    if i == minimal:
        raise NoWitnessNeeded(
            f"stratum {i} is minimal for k={k}, delta={form.delta}"
        )
    # adapted basis: intersection rows first, then greedy completion from f0
    rows = [list(r) for r in inter.basis]
    for cand in f0.basis:
        trial = Matrix(F, rows + [list(cand)])
        if trial.rank() == len(rows) + 1:
            rows.append(list(cand))
        if len(rows) == k:
            break
    if len(rows) != k:
        raise AssertionError("basis completion failed (unreachable)")
    perp = orthogonal_complement(form, f0)
    span_kf = rad.add(f0)
    vector = None
    for cand in perp.basis:
        if not span_kf.contains(cand):
            vector = tuple(cand)
            break
    if vector is None:
        raise InvariantViolation(
            "no witness vector exists although the stratum is not minimal"
        )
    replaced = i - 1
    if F.is_finite:
        tvalues = [t for t in F.elements() if not F.is_zero(t)]
    else:
        tvalues = [F.from_int(t) for t in (1, -1, 2, -2, 3)]
    checks = []
    for t in tvalues:
        new_rows = [list(r) for r in rows]
        new_rows[replaced] = [
            F.add(x, F.mul(t, e)) for x, e in zip(rows[replaced], vector)
        ]
        ft = Subspace(F, f0.ambient, new_rows)
        if ft.dim != k:
            raise AssertionError("family member dropped dimension (unreachable)")
        checks.append(
            (t, is_isotropic(form, ft), radical_intersection_dim(form, ft))
        )
    # the family returns to the starting point at t = 0
    if Subspace(F, f0.ambient, rows) != f0:
        raise AssertionError("adapted basis changed the subspace (unreachable)")
    return WitnessRecord(
        vector=vector,
        replaced_index=replaced,
        adapted_basis=tuple(tuple(r) for r in rows),
        checks=tuple(checks),
        start_intersection=i,
    )
