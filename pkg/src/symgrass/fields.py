"""Exact scalar arithmetic over the rationals, prime fields, and small extensions.

A field object is a context: elements are plain hashable Python values and
every operation goes through field methods.

    QQ          -> fractions.Fraction
    GF(p)       -> int in range(p)
    GF(p, e)    -> tuple of e ints (coefficients of the generator, ascending)

Extension fields store an explicit irreducible modulus, found by exhaustive
search over monic polynomials; the search order is fixed, so GF(p, e) is
deterministic. No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError


class Field:
    """Common interface; concrete subclasses below."""

    char: int
    order: int | None  # None for infinite fields

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def check(self, a):
        """Validate that `a` is a legal element; return it normalized."""
        raise NotImplementedError

    def elements(self):
        """Iterate all elements in canonical order (finite fields only)."""
        raise PreconditionError(f"{self} is not finite; cannot enumerate")

    def sort_key(self, a):
        """Total order used wherever a deterministic scan is required."""
        raise NotImplementedError

    def sample(self, rng):
        """Draw a pseudo-random element from `rng` (a random.Random)."""
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def spec(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.spec())


class RationalField(Field):
    char = 0
    order = None

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def check(self, a):
        if isinstance(a, int):
            return Fraction(a)
        if isinstance(a, Fraction):
            return a
        raise PreconditionError(f"not a rational scalar: {a!r}")

    def sort_key(self, a):
        return a

    def sample(self, rng):
        num = rng.randrange(-9, 10)
        den = rng.randrange(1, 7)
        return Fraction(num, den)

    def spec(self):
        return ("Q",)

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise PreconditionError(f"characteristic must be prime, got {p}")
        self.p = p
        self.char = p
        self.order = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def check(self, a):
        if isinstance(a, int):
            return a % self.p
        raise PreconditionError(f"not a residue mod {self.p}: {a!r}")

    def elements(self):
        return iter(range(self.p))

    def sort_key(self, a):
        return a

    def sample(self, rng):
        return rng.randrange(self.p)

    def spec(self):
        return ("Fp", self.p)

    def __repr__(self):
        return f"GF({self.p})"


def _poly_mod_mul(a, b, modulus, p):
    """Multiply coefficient tuples mod (modulus, p); result has len(modulus)-1."""
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce by the monic modulus
    for i in range(len(prod) - 1, e - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(e):
                prod[i - e + j] = (prod[i - e + j] - c * modulus[j]) % p
    return tuple(prod[:e]) if len(prod) >= e else tuple(prod) + (0,) * (e - len(prod))


def _poly_coeffs_mod_pow(base, exp, modulus, p):
    e = len(modulus) - 1
    result = tuple([1] + [0] * (e - 1))
    while exp:
        if exp & 1:
            result = _poly_mod_mul(result, base, modulus, p)
        base = _poly_mod_mul(base, base, modulus, p)
        exp >>= 1
    return result


def _is_irreducible(modulus, p):
    """Rabin test for a monic coefficient tuple over GF(p)."""
    e = len(modulus) - 1
    if e == 1:
        return True
    x = tuple([0, 1] + [0] * (e - 2)) if e >= 2 else (0,)
    # x^(p^e) == x mod modulus
    frob = x
    for _ in range(e):
        frob = _poly_coeffs_mod_pow(frob, p, modulus, p)
    if frob != x:
        return False
    # for each prime divisor l of e, gcd check via x^(p^(e/l)) != x
    for l in _prime_divisors(e):
        frob = x
        for _ in range(e // l):
            frob = _poly_coeffs_mod_pow(frob, p, modulus, p)
        diff = tuple((a - b) % p for a, b in zip(frob, x))
        if _tuple_gcd_with_modulus(diff, modulus, p) != (1,):
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _tuple_trim(t):
    i = len(t)
    while i > 0 and t[i - 1] == 0:
        i -= 1
    return tuple(t[:i])


def _tuple_gcd_with_modulus(a, modulus, p):
    """Monic gcd of the coefficient tuple `a` with the modulus, over GF(p)."""
    f = _tuple_trim(modulus)
    g = _tuple_trim(a)
    while g:
        # f mod g
        f = list(f)
        inv_lead = pow(g[-1], p - 2, p)
        while len(f) >= len(g) and _tuple_trim(f):
            shift = len(f) - len(g)
            c = (f[-1] * inv_lead) % p
            for i, gi in enumerate(g):
                f[shift + i] = (f[shift + i] - c * gi) % p
            f = list(_tuple_trim(f))
            if not f:
                break
        f, g = g, tuple(f)
        g = _tuple_trim(g)
    if not f:
        return (0,)
    inv_lead = pow(f[-1], p - 2, p)
    return tuple((c * inv_lead) % p for c in f)


def find_irreducible(p: int, e: int) -> tuple:
    """First monic irreducible of degree e over GF(p) in odometer order.

    Returns the full coefficient tuple (length e+1, ascending, leading 1).
    Fields at desk scale are tiny, so exhaustive search is fine.
    """
    if e == 1:
        return (0, 1)
    count = p**e
    for idx in range(count):
        lower = []
        m = idx
        for _ in range(e):
            lower.append(m % p)
            m //= p
        cand = tuple(lower) + (1,)
        if cand[0] == 0:
            continue  # reducible: divisible by x
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found (unreachable)")


class ExtensionField(Field):
    """GF(p^e) with elements as coefficient tuples of length e."""

    def __init__(self, p: int, e: int, modulus: tuple | None = None):
        if e < 2:
            raise PreconditionError("extension degree must be >= 2; use GF(p)")
        self.p = p
        self.e = e
        self.char = p
        self.order = p**e
        self.modulus = tuple(modulus) if modulus is not None else find_irreducible(p, e)
        if len(self.modulus) != e + 1 or self.modulus[-1] != 1:
            raise PreconditionError("modulus must be monic of degree e")
        if not _is_irreducible(self.modulus, p):
            raise PreconditionError("modulus is reducible")

    def zero(self):
        return (0,) * self.e

    def one(self):
        return (1,) + (0,) * (self.e - 1)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.e - 1)

    def generator(self):
        return (0, 1) + (0,) * (self.e - 2)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        return _poly_mod_mul(a, b, self.modulus, self.p)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        # a^(q-2) with q = p^e
        return _poly_coeffs_mod_pow(a, self.order - 2, self.modulus, self.p)

    def check(self, a):
        if isinstance(a, int):
            return self.from_int(a)
        if isinstance(a, tuple) and len(a) == self.e and all(isinstance(x, int) for x in a):
            return tuple(x % self.p for x in a)
        raise PreconditionError(f"not an element of GF({self.p}^{self.e}): {a!r}")

    def elements(self):
        p, e = self.p, self.e
        for idx in range(self.order):
            digits = []
            m = idx
            for _ in range(e):
                digits.append(m % p)
                m //= p
            yield tuple(digits)

    def sort_key(self, a):
        return tuple(reversed(a))

    def sample(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.e))

    def embed_subfield(self, sub: Field, a):
        """Map an element of a subfield into this field.

        For the prime field this is the constant embedding. For a proper
        subfield GF(p^d) with d | e, the generator is sent to the first root
        (in canonical element order) of the small modulus here.
        """
        if isinstance(sub, PrimeField):
            if sub.p != self.p:
                raise PreconditionError("characteristic mismatch")
            return self.from_int(a)
        if isinstance(sub, ExtensionField):
            if sub.p != self.p or self.e % sub.e != 0:
                raise PreconditionError("not a subfield")
            root = self._subfield_generator_image(sub)
            acc = self.zero()
            for coeff in reversed(a):
                acc = self.add(self.mul(acc, root), self.from_int(coeff))
            return acc
        raise PreconditionError("cannot embed from this field")

    def _subfield_generator_image(self, sub: "ExtensionField"):
        cache = getattr(self, "_embed_cache", None)
        if cache is None:
            cache = {}
            self._embed_cache = cache
        key = sub.spec()
        if key not in cache:
            for cand in self.elements():
                acc = self.zero()
                for coeff in reversed(sub.modulus):
                    acc = self.add(self.mul(acc, cand), self.from_int(coeff))
                if not any(acc):
                    cache[key] = cand
                    break
            else:
                raise AssertionError("subfield modulus has no root (unreachable)")
        return cache[key]

    def spec(self):
        return ("Fq", self.p, self.e, self.modulus)

    def __repr__(self):
        return f"GF({self.p}^{self.e})"


QQ = RationalField()

_field_cache: dict = {}


def GF(p: int, e: int = 1) -> Field:
    """Cached finite-field constructor with the deterministic default modulus."""
    key = (p, e)
    if key not in _field_cache:
        _field_cache[key] = PrimeField(p) if e == 1 else ExtensionField(p, e)
    return _field_cache[key]


def embed_scalar(src: Field, dst: Field, a):
    """Move a scalar from `src` into the bigger field `dst`."""
    if src == dst:
        return a
    if isinstance(dst, ExtensionField):
        return dst.embed_subfield(src, a)
    raise PreconditionError(f"no embedding {src} -> {dst}")
