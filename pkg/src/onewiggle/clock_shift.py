"""Symbolic algebra of the basis unitaries u^p_q and their realizations.

u^p_q = y^q v^p, where y is the diagonal of d-th roots of unity and v the
cyclic shift.  Multiplication follows the cocycle rule

    u^{p1}_{q1} u^{p2}_{q2} = w^{p1*q2} u^{p1+p2}_{q1+q2}

with indices mod d.  The dense realizations are kept deliberately independent
of the cocycle bookkeeping so they can serve as an oracle for it.

The parametric mode handles even dimension d = 2c with c a formal symbol of
declared parity and one index carrying a formal wiggle column q of declared
parity; exponents are reduced through w^c = -1, w^(c^2) = (-1)^c and
w^(c*q) = (-1)^q.
"""

from dataclasses import dataclass

from .rings import (
    CycloError,
    CycloField,
    CycloNum,
    FieldMismatchError,
    Poly,
    RAT_ONE,
    RAT_ZERO,
)


class ParityReductionError(CycloError):
    """A formal exponent kept a bare multiple of the wiggle index."""


@dataclass(frozen=True)
class BasisUnitary:
    """The symbol u^p_q with indices reduced mod d."""

    p: int
    q: int
    d: int

    @staticmethod
    def make(p: int, q: int, d: int) -> "BasisUnitary":
        if d < 2:
            raise CycloError("basis unitaries need d >= 2")
        return BasisUnitary(p % d, q % d, d)

    def __repr__(self):
        return f"u^{self.p}_{self.q}"


@dataclass(frozen=True)
class ScaledUnitary:
    """A field-scalar multiple of a basis unitary; zero is coeff 0 on u^0_0."""

    coeff: CycloNum
    unit: BasisUnitary

    @staticmethod
    def make(coeff: CycloNum, unit: BasisUnitary) -> "ScaledUnitary":
        if coeff.is_zero():
            return ScaledUnitary(coeff, BasisUnitary(0, 0, unit.d))
        return ScaledUnitary(coeff, unit)

    def __repr__(self):
        return f"({self.coeff!r})*{self.unit!r}"


def _check_d(field: CycloField, *units: BasisUnitary):
    for u in units:
        if u.d != field.d:
            raise FieldMismatchError(f"unitary at d={u.d} in field Q(w_{field.d})")


def unit_product(a: BasisUnitary, b: BasisUnitary, field: CycloField) -> ScaledUnitary:
    """Cocycle product:  w^(p_a q_b) u^(p_a+p_b)_(q_a+q_b)."""
    if a.d != b.d:
        raise FieldMismatchError(f"dimension mismatch {a.d} vs {b.d}")
    _check_d(field, a)
    coeff = field.omega_power(a.p * b.q)
    return ScaledUnitary(coeff, BasisUnitary((a.p + b.p) % a.d, (a.q + b.q) % a.d, a.d))


def word_product(units, field: CycloField) -> ScaledUnitary:
    """Left-to-right fold of the cocycle rule over a nonempty word."""
    units = list(units)
    if not units:
        raise CycloError("empty word")
    _check_d(field, *units)
    acc = units[0]
    exponent = 0
    for nxt in units[1:]:
        if nxt.d != acc.d:
            raise FieldMismatchError(f"dimension mismatch {acc.d} vs {nxt.d}")
        exponent += acc.p * nxt.q
        acc = BasisUnitary((acc.p + nxt.p) % acc.d, (acc.q + nxt.q) % acc.d, acc.d)
    return ScaledUnitary(field.omega_power(exponent), acc)


# ---------------------------------------------------------------------------
# dense realization (the oracle)


class DenseMatrix:
    """Dense d x d matrix over one cyclotomic field."""

    __slots__ = ("field", "entries")

    def __init__(self, field: CycloField, entries):
        self.field = field
        self.entries = tuple(tuple(row) for row in entries)
        if len(self.entries) != field.d or any(len(r) != field.d for r in self.entries):
            raise CycloError("matrix shape must be d x d")

    @staticmethod
    def zero(field: CycloField) -> "DenseMatrix":
        z = field.zero
        return DenseMatrix(field, [[z] * field.d for _ in range(field.d)])

    @staticmethod
    def identity(field: CycloField) -> "DenseMatrix":
        z, o = field.zero, field.one
        return DenseMatrix(
            field, [[o if i == j else z for j in range(field.d)] for i in range(field.d)]
        )

    def __eq__(self, other):
        return (
            isinstance(other, DenseMatrix)
            and self.field.d == other.field.d
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field.d, self.entries))

    def __add__(self, other):
        return DenseMatrix(
            self.field,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other):
        return DenseMatrix(
            self.field,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def scale(self, k: CycloNum) -> "DenseMatrix":
        return DenseMatrix(self.field, [[k * a for a in row] for row in self.entries])

    def __mul__(self, other: "DenseMatrix") -> "DenseMatrix":
        d = self.field.d
        z = self.field.zero
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            new_row = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if a.coeffs and b.coeffs:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return DenseMatrix(self.field, out)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __repr__(self):
        return f"DenseMatrix(d={self.field.d})"


def realize(u: BasisUnitary, field: CycloField) -> DenseMatrix:
    """The explicit matrix y^q v^p:  entry (i, j) is w^(i*q) iff j = i+p mod d."""
    _check_d(field, u)
    d = field.d
    z = field.zero
    rows = []
    for i in range(d):
        row = [z] * d
        row[(i + u.p) % d] = field.omega_power(i * u.q)
        rows.append(row)
    return DenseMatrix(field, rows)


def realize_scaled(s: ScaledUnitary, field: CycloField) -> DenseMatrix:
    return realize(s.unit, field).scale(s.coeff)


# ---------------------------------------------------------------------------
# parametric even-dimension mode: d = 2c, indices linear in c, one wiggle slot


@dataclass(frozen=True)
class IndexForm:
    """The integer form a + b*c in the half-dimension symbol c."""

    a: int
    b: int = 0

    def __add__(self, other: "IndexForm") -> "IndexForm":
        return IndexForm(self.a + other.a, self.b + other.b)

    def instantiate(self, c: int) -> int:
        return self.a + self.b * c

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        core = "c" if self.b == 1 else f"{self.b}c"
        return f"{core}{self.a:+d}" if self.a else core


@dataclass(frozen=True)
class WiggleCol:
    """Column index 'q + offset' where q is the formal wiggle symbol."""

    offset: IndexForm

    def __repr__(self):
        return "q" if self.offset == IndexForm(0, 0) else f"q+({self.offset!r})"


#: the plain formal wiggle column
WIGGLE = WiggleCol(IndexForm(0, 0))


@dataclass(frozen=True)
class ParamUnitary:
    """u with row index a linear form in c; column a linear form or the wiggle."""

    p: IndexForm
    q: object  # IndexForm or WiggleCol

    def has_wiggle(self) -> bool:
        return isinstance(self.q, WiggleCol)

    def instantiate(self, c: int, q: int, d: int) -> BasisUnitary:
        if isinstance(self.q, WiggleCol):
            col = q + self.q.offset.instantiate(c)
        else:
            col = self.q.instantiate(c)
        return BasisUnitary.make(self.p.instantiate(c), col, d)

    def __repr__(self):
        return f"u^{self.p!r}_{self.q!r}"


def param_unitary(p, q="wiggle") -> ParamUnitary:
    """Convenience builder: indices as ints, (a, b) pairs, or 'wiggle'."""

    def form(v):
        if isinstance(v, IndexForm):
            return v
        if isinstance(v, int):
            return IndexForm(v, 0)
        return IndexForm(int(v[0]), int(v[1]))

    return ParamUnitary(form(p), WIGGLE if isinstance(q, str) else form(q))


@dataclass(frozen=True)
class ParamScalar:
    """An element of Z[w, 1/w] stored as poly * w^(-shift) with the shift recorded."""

    poly: Poly
    shift: int

    def instantiate(self, field: CycloField) -> CycloNum:
        value = field.num(self.poly.coeffs)
        return value * field.omega_power(-self.shift)


class _Exp:
    """Exponent normal form A + B*c + C*c^2 + (F0 + F1*c)*q."""

    __slots__ = ("A", "B", "C", "F0", "F1")

    def __init__(self, A=0, B=0, C=0, F0=0, F1=0):
        self.A, self.B, self.C, self.F0, self.F1 = A, B, C, F0, F1

    def add_product(self, p: IndexForm, q) -> None:
        """Accumulate p*q where q is an IndexForm or a wiggle column."""
        if isinstance(q, WiggleCol):
            self.F0 += p.a
            self.F1 += p.b
            q = q.offset
        self.A += p.a * q.a
        self.B += p.a * q.b + p.b * q.a
        self.C += p.b * q.b

    def reduced(self, c_odd: bool, q_odd: bool) -> tuple[int, int]:
        """(sign, power): the value w^e = sign * w^power under the parities.

        Requires the bare wiggle multiple F0 to vanish; only c*q products are
        parity-reducible.
        """
        if self.F0 != 0:
            raise ParityReductionError(
                f"exponent keeps bare wiggle multiple {self.F0}*q"
            )
        minus = self.B + (self.C if c_odd else 0) + (self.F1 if q_odd else 0)
        return (-1 if minus % 2 else 1), self.A


def _triple_exponent(units, order) -> _Exp:
    a, b, c = (units[i] for i in order)
    e = _Exp()
    e.add_product(a.p, b.q)
    pa_pb = a.p + b.p
    e.add_product(pa_pb, c.q)
    return e


def param_product(
    units: tuple[ParamUnitary, ParamUnitary, ParamUnitary],
    order: tuple[int, int, int],
    c_odd: bool,
    q_odd: bool,
) -> tuple[ParamUnitary, ParamScalar]:
    """Product of the three units in the given slot order, parity-reduced.

    Returns the target indices as linear forms and the scalar as an element
    of Z[w, 1/w] in shift-recorded form.
    """
    wiggles = sum(1 for u in units if u.has_wiggle())
    if wiggles != 1:
        raise CycloError(f"exactly one wiggle slot required, found {wiggles}")
    sign, power = _triple_exponent(units, order).reduced(c_odd, q_odd)
    shift = -power if power < 0 else 0
    coeff = Poly.x_power(power + shift)
    if sign < 0:
        coeff = -coeff
    target_p = units[0].p + units[1].p + units[2].p
    offset = IndexForm(0, 0)
    for u in units:
        offset = offset + (u.q.offset if u.has_wiggle() else u.q)
    return ParamUnitary(target_p, WiggleCol(offset)), ParamScalar(coeff, shift)
