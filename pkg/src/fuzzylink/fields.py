"""Exact arithmetic over finite fields GF(p^m) with p^m <= 2^16.

Elements are canonical integers in [0, q).  For prime fields the integer
is the residue itself; for extension fields its base-p digits are the
coefficients of the polynomial representative (digit i = coefficient of
x^i, so for p = 2 the usual bit encoding).  Extension-field products go
through precomputed log/antilog tables built on a fixed generator.
"""

from __future__ import annotations

from functools import lru_cache

MAX_ORDER = 1 << 16

# Primitive polynomials over GF(2), bit i = coefficient of x^i.
# Fixed so that serialized records are reproducible across builds.
_PRIMITIVE_POLY_GF2 = {
    1: 0b11,                 # x + 1
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b10011,              # x^4 + x + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    7: 0b10001001,           # x^7 + x^3 + 1
    8: 0b100011101,          # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,         # x^9 + x^4 + 1
    10: 0b10000001001,       # x^10 + x^3 + 1
    11: 0b100000000101,      # x^11 + x^2 + 1
    12: 0b1000001010011,     # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,    # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,   # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011, # x^16 + x^12 + x^3 + x + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over GF(p), coefficients as ascending tuples
# ---------------------------------------------------------------------------

def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        a = list(_poly_trim(a))
        if len(a) - 1 < dm:
            break
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = list(_poly_trim(a))
        if not a:
            break
    return _poly_trim(a)


def _poly_mulmod(a, b, mod, p):
    return _poly_mod(_poly_mul(a, b, p), mod, p)


def _poly_powmod(a, e, mod, p):
    result = (1,)
    base = _poly_mod(a, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def is_irreducible(poly, p: int) -> bool:
    """Trial division of a monic polynomial by all monic polynomials of
    degree <= deg/2."""
    poly = _poly_trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        # all monic polynomials of degree d: p^d candidates
        for idx in range(p ** d):
            cand = []
            v = idx
            for _ in range(d):
                cand.append(v % p)
                v //= p
            cand.append(1)
            if not _poly_mod(poly, tuple(cand), p):
                return False
    return True


def is_primitive(poly, p: int) -> bool:
    """True when x generates the multiplicative group of GF(p)[x]/(poly)."""
    poly = _poly_trim(poly)
    if not is_irreducible(poly, p):
        return False
    m = len(poly) - 1
    order = p ** m - 1
    x = (0, 1)
    if _poly_powmod(x, order, poly, p) != (1,):
        return False
    return all(
        _poly_powmod(x, order // r, poly, p) != (1,) for r in _prime_factors(order)
    )


def default_modulus(p: int, m: int):
    """Fixed primitive modulus for GF(p^m); deterministic across builds.

    GF(2^m) uses the published table above; other characteristics pick the
    lexicographically first monic primitive polynomial.
    """
    if m == 1:
        return None
    if p == 2:
        mask = _PRIMITIVE_POLY_GF2.get(m)
        if mask is None:
            raise ValueError(f"no default modulus for GF(2^{m})")
        return tuple((mask >> i) & 1 for i in range(m + 1))
    for idx in range(p ** m):
        coeffs = []
        v = idx
        for _ in range(m):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        cand = tuple(coeffs)
        if is_primitive(cand, p):
            return cand
    raise ValueError(f"no primitive polynomial found for GF({p}^{m})")


class FieldSpec:
    """A finite field GF(p^m) with canonical integer element encoding.

    Do not instantiate directly; use :func:`field` so equal fields are
    shared and their tables built once.
    """

    __slots__ = ("p", "m", "q", "modulus", "_exp", "_log", "_digit_cache")

    def __init__(self, p: int, m: int, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** m
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds supported maximum {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = q
        if m == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
            self.modulus = None
            self._exp = self._log = None
        else:
            modulus = _poly_trim(modulus) if modulus is not None else default_modulus(p, m)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if any(not (0 <= c < p) for c in modulus):
                raise ValueError("modulus coefficients must be canonical in GF(p)")
            if not is_irreducible(modulus, p):
                raise ValueError("modulus polynomial is not irreducible")
            self.modulus = tuple(modulus)
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _int_to_poly(self, a: int):
        digits = []
        while a:
            digits.append(a % self.p)
            a //= self.p
        return tuple(digits)

    def _poly_to_int(self, poly) -> int:
        out = 0
        for c in reversed(poly):
            out = out * self.p + c
        return out

    def _raw_mul(self, a: int, b: int) -> int:
        prod = _poly_mulmod(self._int_to_poly(a), self._int_to_poly(b), self.modulus, self.p)
        return self._poly_to_int(prod)

    def _build_tables(self):
        q = self.q
        # find a generator of the multiplicative group (x first: the default
        # moduli are primitive, so this normally succeeds immediately)
        factors = _prime_factors(q - 1)
        gen = None
        for cand in range(self.p, q):
            ok = True
            for r in factors:
                acc = 1
                for _ in range((q - 1) // r):
                    acc = self._raw_mul(acc, cand)
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        if gen is None:  # pragma: no cover - irreducible modulus guarantees one
            raise ValueError("no generator found; modulus is not irreducible?")
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            exp[i + q - 1] = acc
            log[acc] = i
            acc = self._raw_mul(acc, gen)
        self._exp = exp
        self._log = log

    # -- element arithmetic ---------------------------------------------------

    def is_element(self, a: int) -> bool:
        return isinstance(a, int) and 0 <= a < self.q

    def check_element(self, a: int) -> int:
        if not (0 <= a < self.q):
            raise ValueError(f"{a} is not a canonical element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = 0
        mult = 1
        p = self.p
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        out = 0
        mult = 1
        p = self.p
        while a:
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.m == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # -- misc -----------------------------------------------------------------

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


@lru_cache(maxsize=None)
def _cached_field(p: int, m: int, modulus) -> FieldSpec:
    return FieldSpec(p, m, modulus)


def field(p: int, m: int = 1, modulus=None) -> FieldSpec:
    """Shared FieldSpec factory; equal parameters return the same object."""
    if modulus is not None:
        modulus = _poly_trim(tuple(modulus))
    return _cached_field(p, m, modulus)


GF2 = field(2)


def exp_log_tables(f: FieldSpec):
    """Antilog/log tables of an extension field (for table-driven decoders).

    The antilog table is doubled in length so that two raw logs can be
    added without a reduction mod q-1.
    """
    if f.m == 1:
        raise ValueError("log tables exist only for extension fields")
    return f._exp, f._log
