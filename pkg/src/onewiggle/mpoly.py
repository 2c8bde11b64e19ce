"""Sparse multivariate polynomials over the rationals.

Just enough ring structure for the symbolic identity checks: terms are a
dict from exponent tuples to nonzero rational coefficients, with a fixed
variable universe per polynomial.
"""

from .rings import RAT_ONE, Rational, rat


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def const(nvars: int, value) -> "MPoly":
        value = rat(value)
        return MPoly(nvars, {(0,) * nvars: value} if value else {})

    @staticmethod
    def var(nvars: int, index: int) -> "MPoly":
        key = [0] * nvars
        key[index] = 1
        return MPoly(nvars, {tuple(key): RAT_ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            k = rat(other)
            if not k:
                return MPoly(self.nvars)
            return MPoly(self.nvars, {e: v * k for e, v in self.terms.items()})
        out: dict = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, 0) + v1 * v2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MPoly.const(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def substitute(self, assignments: dict[int, "MPoly"]) -> "MPoly":
        """Replace variables (by index) with polynomials; others untouched."""
        result = MPoly(self.nvars)
        for exp, coeff in self.terms.items():
            term = MPoly.const(self.nvars, coeff)
            for i, e in enumerate(exp):
                if not e:
                    continue
                base = assignments.get(i)
                if base is None:
                    base = MPoly.var(self.nvars, i)
                term = term * base**e
            result = result + term
        return result

    def coefficient_of(self, index: int, power: int) -> "MPoly":
        """Coefficient of var(index)^power, as a polynomial in the others."""
        out = {}
        for exp, coeff in self.terms.items():
            if exp[index] == power:
                key = exp[:index] + (0,) + exp[index + 1 :]
                out[key] = out.get(key, 0) + coeff
        return MPoly(self.nvars, out)

    def max_degree(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "MPoly(0)"
        bits = []
        for exp in sorted(self.terms):
            mono = "*".join(
                f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(exp) if e
            )
            bits.append(f"{self.terms[exp]}{'*' + mono if mono else ''}")
        return f"MPoly({' + '.join(bits)})"
