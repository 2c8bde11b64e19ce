"""Exact arithmetic: rationals, dense univariate polynomials, cyclotomic fields.

Rationals are `gmpy2.mpq` when available (an order of magnitude faster) and
`fractions.Fraction` otherwise; both keep lowest terms with a positive
denominator, so equality and hashing are structural.

Polynomials are dense tuples of rationals, lowest degree first.  The same
representation serves two roles: ordinary rational polynomials (cyclotomic
polynomials, divisibility tests) and the ring Q[w] of polynomials in a formal
root of unity w, where no modular reduction is ever applied.
"""

import cmath
import math
from fractions import Fraction
from functools import lru_cache

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is normally present
    Rational = Fraction

RAT_ZERO = Rational(0)
RAT_ONE = Rational(1)


def rat(value) -> Rational:
    """Coerce ints, strings like '-1/3', Fractions or rationals to Rational."""
    if isinstance(value, str):
        return Rational(value.strip())
    return Rational(value)


def rat_str(value) -> str:
    """Serialize a rational exactly ('2', '-1/3'); never a float."""
    return str(value)


class CycloError(ValueError):
    """Base error for exact-ring misuse."""


class FieldMismatchError(CycloError):
    """Operands belong to different cyclotomic fields."""


class CycloZeroDivisionError(ZeroDivisionError):
    """Inversion of the zero element of a cyclotomic field."""


# ---------------------------------------------------------------------------
# tuple-level polynomial kernels (coefficients lowest degree first, trimmed)

def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    out = list(a) + [RAT_ZERO] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _pscale(a, k):
    if not k:
        return ()
    return tuple(c * k for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return _pscale(b, a[0])
    if len(b) == 1:
        return _pscale(a, b[0])
    out = [RAT_ZERO] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, e in enumerate(b):
                out[i + j] += c * e
    return _trim(out)


def _pdivmod(a, b):
    """Quotient and remainder over the rationals; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db, lead = len(b) - 1, b[-1]
    quo = [RAT_ZERO] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if c:
            q = c / lead
            quo[i - db] = q
            for j in range(db + 1):
                rem[i - db + j] -= q * b[j]
    return _trim(quo), _trim(rem)


class Poly:
    """Dense univariate polynomial over the rationals.

    >>> Poly.of(1, 0, 1)
    Poly('x^2 + 1')
    >>> Poly.of(-1, 1) * Poly.of(1, 1)
    Poly('x^2 - 1')
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim([rat(c) for c in coeffs]))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def of(*coeffs) -> "Poly":
        return Poly(coeffs)

    @staticmethod
    def const(value) -> "Poly":
        return Poly((value,))

    @staticmethod
    def x_power(k: int) -> "Poly":
        return Poly((RAT_ZERO,) * k + (RAT_ONE,))

    @property
    def degree(self) -> int:
        """Degree of the leading term; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Rational:
        if not self.coeffs:
            return RAT_ZERO
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.coeffs)
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        other = other if isinstance(other, Poly) else Poly.const(rat(other))
        return Poly(_padd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = other if isinstance(other, Poly) else Poly.const(rat(other))
        return Poly(_psub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return Poly.const(rat(other)) - self

    def __neg__(self):
        return Poly(_pneg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(_pmul(self.coeffs, other.coeffs))
        return Poly(_pscale(self.coeffs, rat(other)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = _pdivmod(self.coeffs, other.coeffs)
        return Poly(q), Poly(r)

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return not divmod(other, self)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise CycloError(f"{self!r} is not divisible by {other!r}")
        return q

    def monic(self) -> "Poly":
        if self.is_zero() or self.coeffs[-1] == 1:
            return self
        return Poly(_pscale(self.coeffs, 1 / self.coeffs[-1]))

    def primitive(self) -> "Poly":
        """Integer-content-free form with positive leading coefficient.

        The vanishing locus is unchanged; used to canonicalize side
        conditions before factor comparisons.
        """
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, int(c.denominator))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Poly([rat(v // g) for v in ints])

    def evaluate(self, point):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * point + c
        return acc if acc is not None else RAT_ZERO

    def evaluate_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def shift_up(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero() or k == 0:
            return self
        return Poly((RAT_ZERO,) * k + self.coeffs)

    def __repr__(self):
        return f"Poly('{format_poly(self)}')"


def format_poly(p: Poly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        term = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        coeff = str(mag) if (mag != 1 or i == 0) else ""
        parts.append(f"{sign} {coeff}{term}".strip() if parts else f"{sign}{coeff}{term}")
    return " ".join(parts)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1.

    >>> cyclotomic_polynomial(1)
    Poly('x - 1')
    >>> cyclotomic_polynomial(4)
    Poly('x^2 + 1')
    """
    if n < 1:
        raise CycloError("cyclotomic index must be positive")
    poly = Poly((-RAT_ONE,) + (RAT_ZERO,) * (n - 1) + (RAT_ONE,))
    for m in range(1, n):
        if n % m == 0:
            poly = poly.exact_div(cyclotomic_polynomial(m))
    return poly


def cyclotomic_divisors(p: Poly) -> set[int]:
    """All m >= 1 with Phi_m dividing p over the rationals.

    Exhaustive because phi(m) <= deg p is necessary and phi(m) >= sqrt(m/2),
    so the scan cap 6*(deg p)^2 covers every candidate.
    """
    if p.is_zero():
        raise CycloError("cyclotomic divisors of the zero polynomial")
    deg = p.degree
    found = set()
    for m in range(1, max(6 * deg * deg, 2) + 1):
        if euler_phi(m) <= deg and cyclotomic_polynomial(m).divides(p):
            found.add(m)
    return found


class CycloNum:
    """An element of Q(w_d): a rational polynomial residue modulo Phi_d."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: "CycloField", coeffs: tuple):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("CycloNum is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def rational_value(self) -> Rational:
        if len(self.coeffs) > 1:
            raise CycloError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else RAT_ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, CycloNum)
            and self.field.d == other.field.d
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.field.d, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def _check(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.field.d != self.field.d:
                raise FieldMismatchError(
                    f"Q(w_{self.field.d}) vs Q(w_{other.field.d})"
                )
            return other
        return self.field.from_rational(rat(other))

    def __add__(self, other):
        other = self._check(other)
        return CycloNum(self.field, _padd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return CycloNum(self.field, _psub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return CycloNum(self.field, _pneg(self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            return CycloNum(self.field, _pscale(b, a[0]))
        if len(b) == 1:
            return CycloNum(self.field, _pscale(a, b[0]))
        return CycloNum(self.field, self.field._reduce(_pmul(a, b)))

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        return self.field._invert(self)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)

    def to_complex(self) -> complex:
        """Float evaluation at e^(2*pi*i/d); diagnostic only, never proof-bearing."""
        w = cmath.exp(2j * cmath.pi / self.field.d)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * w + complex(c)
        return acc

    def __repr__(self):
        return f"CycloNum(d={self.field.d}, {format_poly(self.to_poly(), 'w')})"


class CycloField:
    """The cyclotomic field Q(w_d) in the power basis 1, w, ..., w^(phi(d)-1)."""

    _instances: dict[int, "CycloField"] = {}

    def __new__(cls, d: int):
        if d < 2:
            raise CycloError("cyclotomic field needs d >= 2")
        inst = cls._instances.get(d)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(d)
            cls._instances[d] = inst
        return inst

    def _init(self, d: int):
        self.d = d
        self.phi_d = cyclotomic_polynomial(d)
        self.degree = self.phi_d.degree
        assert self.degree == euler_phi(d)
        # rewrite rules x^k -> lower-degree residue, grown on demand from x^deg
        self._rewrite = [tuple(_pneg(self.phi_d.coeffs[:-1]))]
        # same table with plain integer entries (Phi_d is monic integral)
        self._irewrite = [tuple(int(c) for c in self._rewrite[0])]
        self._units = tuple(k for k in range(1, d) if math.gcd(k, d) == 1)
        self.zero = CycloNum(self, ())
        self.one = CycloNum(self, (RAT_ONE,))
        self._omega_pows = None
        self._inv_cache: dict[tuple, tuple] = {}
        self._iinv_cache: dict[tuple, tuple] = {}
        self._modfilter = None

    def mod_filter(self):
        if self._modfilter is None:
            self._modfilter = ModularFilter(self.d, self.degree)
        return self._modfilter

    def _reduce(self, coeffs):
        deg = self.degree
        if len(coeffs) <= deg:
            return _trim(coeffs)
        rewrite = self._rewrite
        top = rewrite[0]
        while len(rewrite) < len(coeffs) - deg:
            nxt = [RAT_ZERO] + list(rewrite[-1])
            if len(nxt) > deg:
                c = nxt.pop()
                if c:
                    for i, t in enumerate(top):
                        nxt[i] += c * t
            rewrite.append(tuple(nxt))
        out = list(coeffs[:deg])
        for k in range(deg, len(coeffs)):
            c = coeffs[k]
            if c:
                for i, t in enumerate(rewrite[k - deg]):
                    if t:
                        out[i] += c * t
        return _trim(out)

    def from_rational(self, value) -> CycloNum:
        value = rat(value)
        return CycloNum(self, (value,) if value else ())

    def num(self, coeffs) -> CycloNum:
        """Element from power-basis coefficients (any length; reduced mod Phi_d)."""
        return CycloNum(self, self._reduce(tuple(rat(c) for c in coeffs)))

    @property
    def omega(self) -> CycloNum:
        return self.omega_power(1)

    def omega_power(self, k: int) -> CycloNum:
        if self._omega_pows is None:
            pows = []
            for j in range(self.d):
                if j < self.degree:
                    pows.append(CycloNum(self, (RAT_ZERO,) * j + (RAT_ONE,)))
                else:
                    pows.append(self.num((RAT_ZERO,) * j + (RAT_ONE,)))
            self._omega_pows = pows
        return self._omega_pows[k % self.d]

    def inv_tuple(self, coeffs: tuple) -> tuple:
        """Inverse of a residue given as a raw coefficient tuple."""
        if not coeffs:
            raise CycloZeroDivisionError(f"inverse of zero in Q(w_{self.d})")
        if len(coeffs) == 1:
            return (1 / coeffs[0],)
        cached = self._inv_cache.get(coeffs)
        if cached is not None:
            return cached
        # extended Euclid on (residue, Phi_d): s*a + t*Phi_d = gcd = const
        r0, r1 = self.phi_d.coeffs, coeffs
        s0, s1 = (), (RAT_ONE,)
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        if not r1:
            raise CycloError("Phi_d not coprime to residue; field corrupt")
        inv = _trim(_pscale(s1, 1 / r1[0]))
        if len(self._inv_cache) > 1 << 16:
            self._inv_cache.clear()
        self._inv_cache[coeffs] = inv
        return inv

    def mul_tuple(self, a: tuple, b: tuple) -> tuple:
        """Product of raw residue tuples, reduced mod Phi_d."""
        if len(a) == 1:
            return _trim(_pscale(b, a[0]))
        if len(b) == 1:
            return _trim(_pscale(a, b[0]))
        return self._reduce(_pmul(a, b))

    def _invert(self, a: CycloNum) -> CycloNum:
        return CycloNum(self, self.inv_tuple(a.coeffs))

    # -- integer-form kernel ------------------------------------------------
    #
    # Hot loops (affine elimination) run on values encoded as (den, ints):
    # a positive integer denominator and a trimmed tuple of integer power-
    # basis coefficients with gcd(content, den) = 1; zero is the empty tuple
    # ().  This avoids per-coefficient rational normalization.

    def ival(self, coeffs) -> tuple:
        """Encode a tuple of rationals as an integer-form value."""
        if not coeffs:
            return ()
        den = 1
        for c in coeffs:
            cd = int(c.denominator)
            den = den * cd // math.gcd(den, cd)
        ints = tuple(int(c.numerator) * (den // int(c.denominator)) for c in coeffs)
        return (den, ints)

    def rat_coeffs(self, v: tuple) -> tuple:
        """Decode an integer-form value back to rational coefficients."""
        if not v:
            return ()
        den, ints = v
        return tuple(Rational(n, den) for n in ints)

    @staticmethod
    def _inormalize(den: int, ints) -> tuple:
        n = len(ints)
        while n and not ints[n - 1]:
            n -= 1
        if not n:
            return ()
        ints = ints[:n]
        if den == 1:  # always canonical: gcd(content, 1) = 1
            return (1, tuple(ints))
        g = den
        for v in ints:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            den //= g
            ints = [v // g for v in ints]
        return (den, tuple(ints))

    def _ireduce(self, out):
        """Reduce an integer coefficient list modulo Phi_d, in place.

        The list must already have length <= d (indices taken mod d, valid
        since Phi_d divides x^d - 1); the remaining fold uses the rewrite
        rows for x^k, phi(d) <= k < d.
        """
        deg = self.degree
        if len(out) <= deg:
            return out
        rewrite = self._irewrite
        top = rewrite[0]
        while len(rewrite) < len(out) - deg:
            nxt = [0] + list(rewrite[-1])
            if len(nxt) > deg:
                c = nxt.pop()
                if c:
                    for i, t in enumerate(top):
                        nxt[i] += c * t
            rewrite.append(tuple(nxt))
        for k in range(len(out) - 1, deg - 1, -1):
            c = out[k]
            if c:
                for i, t in enumerate(rewrite[k - deg]):
                    if t:
                        out[i] += c * t
        del out[deg:]
        return out

    def imul(self, a: tuple, b: tuple) -> tuple:
        if not a or not b:
            return ()
        da, A = a
        db, B = b
        if len(A) == 1:
            c = A[0]
            if c == 1 and da == 1:
                return b
            return self._inormalize(da * db, [c * v for v in B])
        if len(B) == 1:
            c = B[0]
            if c == 1 and db == 1:
                return a
            return self._inormalize(da * db, [c * v for v in A])
        d = self.d
        out = [0] * min(len(A) + len(B) - 1, d)
        for i, c in enumerate(A):
            if c:
                for j, e in enumerate(B):
                    if e:
                        k = i + j
                        out[k if k < d else k - d] += c * e
        return self._inormalize(da * db, self._ireduce(out))

    def isub(self, a: tuple, b: tuple) -> tuple:
        if not b:
            return a
        if not a:
            db, B = b
            return (db, tuple(-v for v in B))
        da, A = a
        db, B = b
        if da == db:
            den = da
            sa = sb = 1
        else:
            g = math.gcd(da, db)
            den = da // g * db
            sa, sb = den // da, den // db
        out = [v * sa for v in A]
        if len(B) > len(out):
            out.extend([0] * (len(B) - len(out)))
        for j, v in enumerate(B):
            if v:
                out[j] -= v * sb
        return self._inormalize(den, out)

    def iadd(self, a: tuple, b: tuple) -> tuple:
        if not b:
            return a
        db, B = b
        return self.isub(a, (db, tuple(-v for v in B)))

    def _iconjugate(self, v: tuple, k: int) -> tuple:
        """Galois image w -> w^k of an integer-form value (k coprime to d)."""
        den, ints = v
        out = [0] * self.d
        for i, c in enumerate(ints):
            if c:
                out[(i * k) % self.d] += c
        return self._inormalize(den, self._ireduce(out))

    def iinv(self, v: tuple) -> tuple:
        """Inverse via the product of Galois conjugates over the field norm."""
        if not v:
            raise CycloZeroDivisionError(f"inverse of zero in Q(w_{self.d})")
        den, ints = v
        if len(ints) == 1:
            n = ints[0]
            return (abs(n), (den if n > 0 else -den,))
        cached = self._iinv_cache.get(v)
        if cached is not None:
            return cached
        prod = (1, (1,))
        for k in self._units[1:]:
            prod = self.imul(prod, self._iconjugate(v, k))
        norm = self.imul(v, prod)
        dn, nn = norm
        if len(nn) != 1:
            raise CycloError("norm computation failed; field corrupt")
        c = nn[0]
        dp, P = prod
        if c < 0:
            c, P = -c, tuple(-x for x in P)
        out = self._inormalize(dp * c, [x * dn for x in P])
        if len(self._iinv_cache) > 1 << 16:
            self._iinv_cache.clear()
        self._iinv_cache[v] = out
        return out

    #: integer-form one, shared
    IONE = (1, (1,))


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ModularFilter:
    """Homomorphic image Z[w] -> F_P with Phi_d(root) = 0 mod P.

    A nonzero image certifies a nonzero exact value; a zero image proves
    nothing and callers must fall back to exact arithmetic.  P is chosen
    deterministically per d, so runs are reproducible.
    """

    __slots__ = ("P", "root_pows", "_den_inv")

    def __init__(self, d: int, degree: int):
        k = (1 << 61) // d
        while not _is_prime(k * d + 1):
            k -= 1
        self.P = P = k * d + 1
        factors = set()
        m, p = d, 2
        while p * p <= m:
            if m % p == 0:
                factors.add(p)
                while m % p == 0:
                    m //= p
            p += 1
        if m > 1:
            factors.add(m)
        root = None
        for g in range(2, 1000):
            r = pow(g, (P - 1) // d, P)
            if r != 1 and all(pow(r, d // f, P) != 1 for f in factors):
                root = r
                break
        self.root_pows = tuple(pow(root, i, P) for i in range(degree))
        self._den_inv: dict[int, int] = {}

    def reduce(self, v: tuple) -> int | None:
        """Image of an integer-form value, or None if the denominator
        collides with P (then only the exact path can decide)."""
        if not v:
            return 0
        den, ints = v
        P = self.P
        acc = 0
        for c, rp in zip(ints, self.root_pows):
            if c:
                acc += c % P * rp
        if den == 1:
            return acc % P
        inv = self._den_inv.get(den)
        if inv is None:
            dm = den % P
            if dm == 0:
                return None
            inv = pow(dm, P - 2, P)
            self._den_inv[den] = inv
        return acc * inv % P


def omega_power(field: CycloField, k: int) -> CycloNum:
    """w^(k mod d) as a reduced element of Q(w_d)."""
    return field.omega_power(k)


def cyclo_add(a: CycloNum, b: CycloNum) -> CycloNum:
    return a + b


def cyclo_mul(a: CycloNum, b: CycloNum) -> CycloNum:
    return a * b


def cyclo_inv(a: CycloNum) -> CycloNum:
    return a.inv()
