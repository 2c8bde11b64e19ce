"""The cubic multilinear polynomial f and its evaluation on basis unitaries.

f(x1, x2, x3) = sum over the six words of a_w * x_{w1} x_{w2} x_{w3}, where
the label w = 'pqr' names the coefficient of the word x_p x_q x_r.  After the
normalization a123 + a231 + a312 = 1 and the zero-sum constraint, the two
dependent coefficients are

    a312 = 1 - a123 - a231,      a321 = -1 - a132 - a213,

leaving the four free parameters (a123, a132, a213, a231).  Evaluating f on a
triple of basis unitaries yields a single target unitary scaled by an affine
form in those four parameters.
"""

from dataclasses import dataclass

from .clock_shift import (
    BasisUnitary,
    IndexForm,
    ParamUnitary,
    ScaledUnitary,
    WiggleCol,
    _Exp,
    _check_d,
)
from .mpoly import MPoly
from .rings import CycloError, CycloField, CycloNum, Poly, RAT_ONE, RAT_ZERO, rat

#: coefficient labels; the word for label 'pqr' is x_p x_q x_r
WORDS = ("123", "132", "213", "231", "312", "321")
FREE = ("123", "132", "213", "231")
_WORD_SLOTS = {w: (int(w[0]) - 1, int(w[1]) - 1, int(w[2]) - 1) for w in WORDS}

#: cyclic-equivalence classes of the six words
CYCLIC_CLASSES = (("123", "231", "312"), ("132", "213", "321"))


def word_exponent(word: str, triple) -> int:
    """Integer e with  U_{w1} U_{w2} U_{w3} = w^e u^P_Q  (cocycle fold)."""
    i, j, k = _WORD_SLOTS[word]
    a, b, c = triple[i], triple[j], triple[k]
    return a.p * b.q + (a.p + b.p) * c.q


@dataclass(frozen=True)
class AffineForm:
    """constant + c1*a123 + c2*a132 + c3*a213 + c4*a231 over a coefficient ring."""

    constant: object
    a123: object
    a132: object
    a213: object
    a231: object

    def entries(self):
        return (self.a123, self.a132, self.a213, self.a231, self.constant)

    def linear(self):
        return (self.a123, self.a132, self.a213, self.a231)

    def is_zero(self) -> bool:
        return all(not e for e in self.entries())

    def is_constant(self) -> bool:
        return all(not e for e in self.linear())

    def scaled(self, k) -> "AffineForm":
        return AffineForm(*(e * k for e in (self.constant, *self.linear())))

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(
            self.constant + other.constant,
            self.a123 + other.a123,
            self.a132 + other.a132,
            self.a213 + other.a213,
            self.a231 + other.a231,
        )

    def evaluate(self, point: "ParamPoint"):
        return (
            self.constant
            + self.a123 * point.a123
            + self.a132 * point.a132
            + self.a213 * point.a213
            + self.a231 * point.a231
        )

    def row(self):
        """Length-5 row (variable coefficients, constant last)."""
        return (self.a123, self.a132, self.a213, self.a231, self.constant)


def form_from_values(values: dict) -> AffineForm:
    """Affine form of sum a_w * values[w] after the two substitutions."""
    v312, v321 = values["312"], values["321"]
    return AffineForm(
        v312 - v321,
        values["123"] - v312,
        values["132"] - v321,
        values["213"] - v321,
        values["231"] - v312,
    )


@dataclass(frozen=True)
class ParamPoint:
    """A point of the 4-dimensional parameter space; dependents derived."""

    a123: object
    a132: object
    a213: object
    a231: object

    @staticmethod
    def of(a123, a132, a213, a231) -> "ParamPoint":
        return ParamPoint(rat(a123), rat(a132), rat(a213), rat(a231))

    @property
    def a312(self):
        return 1 - self.a123 - self.a231

    @property
    def a321(self):
        return -1 - self.a132 - self.a213

    def coefficients(self) -> dict:
        return {
            "123": self.a123,
            "132": self.a132,
            "213": self.a213,
            "231": self.a231,
            "312": self.a312,
            "321": self.a321,
        }


#: parameters of the scalar multiple of the alternating polynomial S3
S3_POINT = ParamPoint.of("1/3", "-1/3", "-1/3", "1/3")


class MultilinearCubic:
    """The six word coefficients of f as affine forms in the free parameters."""

    def __init__(self):
        zero, one = RAT_ZERO, RAT_ONE
        self.forms = {
            "123": AffineForm(zero, one, zero, zero, zero),
            "132": AffineForm(zero, zero, one, zero, zero),
            "213": AffineForm(zero, zero, zero, one, zero),
            "231": AffineForm(zero, zero, zero, zero, one),
            "312": AffineForm(one, -one, zero, zero, -one),
            "321": AffineForm(-one, zero, -one, -one, zero),
        }

    def coefficient(self, word: str) -> AffineForm:
        return self.forms[word]


def evaluate_on_units(field: CycloField, triple) -> tuple[BasisUnitary, AffineForm]:
    """Sum of the six word products: one target unitary times an affine form."""
    triple = tuple(triple)
    _check_d(field, *triple)
    d = field.d
    target = BasisUnitary(
        (triple[0].p + triple[1].p + triple[2].p) % d,
        (triple[0].q + triple[1].q + triple[2].q) % d,
        d,
    )
    values = {w: field.omega_power(word_exponent(w, triple)) for w in WORDS}
    return target, form_from_values(values)


def evaluate_at_point(field: CycloField, triple, point: ParamPoint) -> ScaledUnitary:
    target, form = evaluate_on_units(field, triple)
    value = form.evaluate(point)
    if not isinstance(value, CycloNum):
        value = field.from_rational(value)
    return ScaledUnitary.make(value, target)


def evaluate_dense(field: CycloField, matrices, point: ParamPoint):
    """Oracle: f at the point on explicit matrices, by matrix arithmetic."""
    coeffs = point.coefficients()
    acc = None
    for w in WORDS:
        i, j, k = _WORD_SLOTS[w]
        term = (matrices[i] * matrices[j] * matrices[k]).scale(
            field.from_rational(coeffs[w])
        )
        acc = term if acc is None else acc + term
    return acc


# ---------------------------------------------------------------------------
# parametric even-dimension evaluation (d = 2c)


@dataclass(frozen=True)
class ParamEvaluation:
    """One table row: target indices, coefficient form over Q[w], w-shift."""

    target: ParamUnitary
    form: AffineForm  # entries are Poly in the formal root w
    shift: int  # derived form equals w^(-shift) * form at any valid d


def evaluate_param_even(c_odd: bool, triple, q_odd: bool) -> ParamEvaluation:
    """Six-permutation sum over parametric unitaries, reduced by parities.

    The coefficient is independent of the wiggle column q once its parity is
    declared; exponents that retain a bare multiple of q raise
    ParityReductionError.
    """
    triple = tuple(triple)
    wiggles = sum(1 for u in triple if u.has_wiggle())
    if wiggles != 1:
        raise CycloError(f"exactly one wiggle slot required, found {wiggles}")
    signed_powers = {}
    for w in WORDS:
        i, j, k = _WORD_SLOTS[w]
        a, b, c = triple[i], triple[j], triple[k]
        e = _Exp()
        e.add_product(a.p, b.q)
        e.add_product(a.p + b.p, c.q)
        signed_powers[w] = e.reduced(c_odd, q_odd)
    shift = -min(0, min(p for _, p in signed_powers.values()))
    values = {}
    for w, (sign, power) in signed_powers.items():
        mono = Poly.x_power(power + shift)
        values[w] = -mono if sign < 0 else mono
    target_p = triple[0].p + triple[1].p + triple[2].p
    offset = IndexForm(0, 0)
    for u in triple:
        offset = offset + (u.q.offset if u.has_wiggle() else u.q)
    target = ParamUnitary(target_p, WiggleCol(offset))
    return ParamEvaluation(target, form_from_values(values), shift)


# ---------------------------------------------------------------------------
# formal-wiggle evaluation (all six coefficients free; used for the traceless
# spanning identities)

#: variable universe of the formal-wiggle ring
FORMAL_VARS = ("a123", "a132", "a213", "a231", "a312", "a321", "t")
_NV = len(FORMAL_VARS)
_T_INDEX = FORMAL_VARS.index("t")

#: the formal wiggle slot u^p_q
FORMAL = object()


def formal_var(name: str) -> MPoly:
    return MPoly.var(_NV, FORMAL_VARS.index(name))


def formal_const(value) -> MPoly:
    return MPoly.const(_NV, value)


@dataclass(frozen=True)
class FormalEvaluation:
    """f on (two fixed zero-row unitaries, one formal u^p_q).

    The target is u^p_(q + col_offset); the coefficient is a polynomial in
    t = w^p whose coefficients are linear forms in all six a_w.
    """

    wiggle_slot: int
    col_offset: int
    coeff: MPoly


def evaluate_formal_wiggle(triple) -> FormalEvaluation:
    """Triple entries: FORMAL for the wiggle slot, an int column q (row 0
    implied) or a (0, q) pair for the fixed slots."""
    slots = []
    wiggle_slot = None
    for i, entry in enumerate(triple):
        if entry is FORMAL:
            if wiggle_slot is not None:
                raise CycloError("more than one formal wiggle slot")
            wiggle_slot = i
            slots.append(None)
            continue
        if isinstance(entry, tuple):
            p, q = entry
            if p != 0:
                raise CycloError(f"fixed slot {i + 1} must have row index 0, got {p}")
        else:
            q = entry
        if q < 0:
            raise CycloError("fixed column indices must be nonnegative")
        slots.append(int(q))
    if wiggle_slot is None:
        raise CycloError("no formal wiggle slot")

    t = MPoly.var(_NV, _T_INDEX)
    coeff = MPoly(_NV)
    for w in WORDS:
        i, j, k = _WORD_SLOTS[w]
        # rows are 0 except the wiggle's formal p, so each exponent is p times
        # the fixed columns it multiplies
        m = 0
        if i == wiggle_slot:
            if j != wiggle_slot:
                m += slots[j] if slots[j] is not None else 0
            m += slots[k] if k != wiggle_slot else 0
        if j == wiggle_slot and k != wiggle_slot:
            m += slots[k]
        coeff = coeff + formal_var("a" + w) * t**m
    offset = sum(q for q in slots if q is not None)
    return FormalEvaluation(wiggle_slot, offset, coeff)


def formal_substitutions(relations: dict[str, MPoly]) -> dict[int, MPoly]:
    """Name-keyed linear substitutions -> index-keyed, for MPoly.substitute."""
    return {FORMAL_VARS.index(name): value for name, value in relations.items()}
