"""
Exact arithmetic in Q(s) with s = q^(1/D): q-integers, q-factorials, q-binomials and
truncated expansions at q = e^h
"""
import re
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, List, Tuple, Union

from sympy import QQ, Rational, Symbol, factorial, sqrt

from app.services.errors import ConsistencyError, FieldArithmeticError, PoleAtOneError

logger = logging.getLogger(__name__)

# s is the only generator; q = s^D for the root order D of the element
S = Symbol("s", positive=True)
DOMAIN = QQ.frac_field(S)
_GEN = DOMAIN.from_sympy(S)

MIN_SERIES_ORDER = 2

Scalar = Union[int, Fraction, Rational]


def to_domain(x: Scalar):
    """Embed a rational number into the fraction field"""
    return DOMAIN.from_sympy(Rational(x))


def _gen_power(k: int):
    """s^k with the denominator in canonical form"""
    return _GEN ** k if k >= 0 else DOMAIN.one / _GEN ** (-k)


def poly_terms(poly) -> List[Tuple[int, Rational]]:
    return [(monom[0], QQ.to_sympy(coeff)) for monom, coeff in poly.terms()]


def _inflate(value, k: int):
    """Substitute s -> s^k in a fraction field element"""
    def rebuild(poly):
        return sum((to_domain(c) * _gen_power(e * k) for e, c in poly_terms(poly)), DOMAIN.zero)
    return rebuild(value.numer) / rebuild(value.denom)


def _render_exponent(exponent: Rational) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return "q"
    if exponent.q == 1:
        return f"q^{exponent}"
    return f"q^({exponent})"


def render_terms(terms: Iterable[Tuple[Rational, Rational]]) -> str:
    """Render (q-exponent, coefficient) pairs with descending exponents"""
    parts = []
    for exponent, coeff in sorted(terms, key=lambda t: -t[0]):
        if coeff == 0:
            continue
        mono = _render_exponent(exponent)
        magnitude = abs(coeff)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts) if parts else "0"


_COEFF = r"\d+(?:/\d+)?"
_MONO = r"q(?:\^(?:-?\d+|\(-?\d+(?:/\d+)?\)))?"
_TERM = rf"(?:{_COEFF}\*{_MONO}|{_MONO}|{_COEFF})"
_POLYNOMIAL = re.compile(rf"-?{_TERM}(?: [+-] {_TERM})*")
_SIGNED_TERM = re.compile(rf"(?P<sign>-?)(?:(?P<coeff>{_COEFF})(?:\*(?P<power>{_MONO}))?|(?P<mono>{_MONO}))")
_QUOTIENT = re.compile(r"\((.+)\)/\((.+)\)")


def _q_exponent(mono: str) -> Fraction:
    if mono == "q":
        return Fraction(1)
    return Fraction(mono[2:].strip("()"))


def _parse_polynomial(part: str, text: str, root_order: int):
    """Sum of signed terms in canonical form, as an element of DOMAIN"""
    if not _POLYNOMIAL.fullmatch(part):
        raise FieldArithmeticError(f"cannot parse {text!r}: not a canonical expression in q")
    total = DOMAIN.zero
    for token in re.split(r" (?=[+-] )", part):
        term = _SIGNED_TERM.fullmatch(token.replace("+ ", "").replace("- ", "-"))
        mono = term["power"] or term["mono"]
        try:
            coeff = Fraction(term["coeff"] or 1)
            s_exponent = _q_exponent(mono) * root_order if mono else Fraction(0)
        except ZeroDivisionError:
            raise FieldArithmeticError(f"zero denominator in {text!r}")
        if s_exponent.denominator != 1:
            raise FieldArithmeticError(
                f"{text!r} is not a rational function of q^(1/{root_order})"
            )
        value = to_domain(coeff) * _gen_power(int(s_exponent))
        total = total - value if term["sign"] else total + value
    return total


class FieldElement:
    """
    Exact element of Q(s), s = q^(1/D)

    The value is a sympy fraction field element (numerator and denominator already
    coprime); the canonical text form divides by the leading coefficient and lowest
    power of the denominator so that it is monic with lowest exponent 0.
    """

    __slots__ = ("value", "root_order")

    def __init__(self, value, root_order: int):
        if root_order < 1:
            raise FieldArithmeticError(f"root order must be positive, got {root_order}")
        if not DOMAIN.of_type(value):
            value = to_domain(value)
        self.value = value
        self.root_order = root_order

    # Constructors

    @classmethod
    def zero(cls, root_order: int) -> "FieldElement":
        return cls(DOMAIN.zero, root_order)

    @classmethod
    def one(cls, root_order: int) -> "FieldElement":
        return cls(DOMAIN.one, root_order)

    @classmethod
    def from_rational(cls, r: Scalar, root_order: int) -> "FieldElement":
        return cls(to_domain(r), root_order)

    @classmethod
    def monomial(cls, exponent: Scalar, root_order: int, coeff: Scalar = 1) -> "FieldElement":
        """coeff * q^exponent; the exponent must be a multiple of 1/D"""
        s_exponent = Rational(exponent) * root_order
        if s_exponent.q != 1:
            raise FieldArithmeticError(
                f"q^({Rational(exponent)}) is not an integer power of q^(1/{root_order})"
            )
        return cls(to_domain(coeff) * _gen_power(int(s_exponent)), root_order)

    @classmethod
    def parse(cls, text: str, root_order: int) -> "FieldElement":
        """
        Parse canonical text such as "q^2 + 1 + q^-2" or "(q)/(q^2 + 1)"

        Only the grammar written by `to_text` is accepted: terms c, q^e or c*q^e joined
        by " + " and " - ", optionally as (numerator)/(denominator).

        Args:
            text: Expression in q with rational coefficients and exponents
            root_order: D; every exponent must be a multiple of 1/D

        Returns:
            The parsed element
        """
        stripped = text.strip()
        quotient = _QUOTIENT.fullmatch(stripped)
        parts = quotient.groups() if quotient else (stripped,)
        values = [_parse_polynomial(part, text, root_order) for part in parts]
        if len(values) == 2:
            if not values[1]:
                raise FieldArithmeticError(f"zero denominator in {text!r}")
            return cls(values[0] / values[1], root_order)
        return cls(values[0], root_order)

    # Root order handling

    def lift(self, root_order: int) -> "FieldElement":
        """Rewrite over s' = q^(1/root_order); root_order must be a multiple of D"""
        if root_order == self.root_order:
            return self
        if root_order % self.root_order:
            raise FieldArithmeticError(
                f"cannot lift root order {self.root_order} to {root_order}"
            )
        return FieldElement(_inflate(self.value, root_order // self.root_order), root_order)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.root_order == self.root_order:
                return self.value, other.value, self.root_order
            common = lcm(self.root_order, other.root_order)
            return self.lift(common).value, other.lift(common).value, common
        if isinstance(other, (int, Fraction, Rational)):
            return self.value, to_domain(other), self.root_order
        return None

    # Arithmetic

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(c[0] + c[1], c[2])

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(c[0] - c[1], c[2])

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(c[1] - c[0], c[2])

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(c[0] * c[1], c[2])

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if not c[1]:
            raise FieldArithmeticError("division by zero")
        return FieldElement(c[0] / c[1], c[2])

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if not c[0]:
            raise FieldArithmeticError("division by zero")
        return FieldElement(c[1] / c[0], c[2])

    def __neg__(self):
        return FieldElement(-self.value, self.root_order)

    def __pow__(self, n: int):
        if n < 0 and not self.value:
            raise FieldArithmeticError("division by zero")
        if n < 0:
            return FieldElement(DOMAIN.one / self.value ** (-n), self.root_order)
        return FieldElement(self.value ** n, self.root_order)

    def inverse(self) -> "FieldElement":
        return self ** -1

    def bar(self) -> "FieldElement":
        """The involution s -> s^-1"""
        return FieldElement(_inflate(self.value, -1), self.root_order)

    def __eq__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return not (c[0] - c[1])

    def __hash__(self):
        # constants hash like the plain number they equal
        if self.value.numer.is_ground and self.value.denom.is_ground:
            r = self.evaluate_at_q1()
            return hash(Fraction(int(r.p), int(r.q)))
        return hash(self.to_text())

    def __bool__(self):
        return bool(self.value)

    # Structure

    def is_zero(self) -> bool:
        return not self.value

    def is_laurent(self) -> bool:
        return len(self.value.denom.terms()) == 1

    def is_monomial(self) -> bool:
        return len(self.value.numer.terms()) == 1 and self.is_laurent()

    def monomial_parts(self) -> Tuple[Rational, Rational]:
        """(coefficient, q-exponent) of a monomial"""
        if not self.is_monomial():
            raise FieldArithmeticError(f"{self.to_text()} is not a monomial")
        (e_num, c_num), = poly_terms(self.value.numer)
        (e_den, c_den), = poly_terms(self.value.denom)
        return c_num / c_den, Rational(e_num - e_den, self.root_order)

    def q_exponent(self) -> Rational:
        return self.monomial_parts()[1]

    def sqrt(self) -> "FieldElement":
        """Positive square root of c * s^k with c a rational square and k even"""
        try:
            coeff, exponent = self.monomial_parts()
        except FieldArithmeticError:
            raise FieldArithmeticError(f"square root of non-monomial {self.to_text()}")
        s_exponent = exponent * self.root_order
        root = sqrt(coeff)
        if coeff <= 0 or not root.is_Rational or s_exponent % 2:
            raise FieldArithmeticError(
                f"{self.to_text()} has no monomial square root over q^(1/{self.root_order})"
            )
        return FieldElement.monomial(exponent / 2, self.root_order, root)

    def evaluate_at_q1(self) -> Rational:
        num = sum((c for _, c in poly_terms(self.value.numer)), Rational(0))
        den = sum((c for _, c in poly_terms(self.value.denom)), Rational(0))
        if den == 0:
            raise PoleAtOneError(self._render_denominator())
        return num / den

    # Canonical text

    def _normalized(self):
        """Numerator and denominator terms as (s-exponent, coeff), denominator monic"""
        den = poly_terms(self.value.denom)
        num = poly_terms(self.value.numer)
        low = min(e for e, _ in den)
        lead = max(den)[1]
        return (
            [(e - low, c / lead) for e, c in num],
            [(e - low, c / lead) for e, c in den],
        )

    def _render(self, terms) -> str:
        return render_terms((Rational(e, self.root_order), c) for e, c in terms)

    def _render_denominator(self) -> str:
        return self._render(self._normalized()[1])

    def to_text(self) -> str:
        if not self.value:
            return "0"
        num, den = self._normalized()
        if len(den) == 1:
            return self._render(num)
        return f"({self._render(num)})/({self._render(den)})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"FieldElement({self.to_text()!r}, root_order={self.root_order})"


def q_power(exponent: Scalar, root_order: int) -> FieldElement:
    return FieldElement.monomial(exponent, root_order)


def q_integer(n: int, d_i: int = 1, root_order: int = 1) -> FieldElement:
    """
    [n]_{q_i} = (q_i^n - q_i^-n)/(q_i - q_i^-1) with q_i = q^{d_i}

    Computed as the telescoped sum q_i^(n-1) + q_i^(n-3) + ... + q_i^(1-n).
    """
    if n == 0:
        return FieldElement.zero(root_order)
    if n < 0:
        return -q_integer(-n, d_i, root_order)
    step = d_i * root_order
    total = sum((_gen_power(step * (n - 1 - 2 * j)) for j in range(n)), DOMAIN.zero)
    return FieldElement(total, root_order)


def q_factorial(n: int, d_i: int = 1, root_order: int = 1) -> FieldElement:
    if n < 0:
        raise FieldArithmeticError(f"q-factorial needs n >= 0, got {n}")
    result = FieldElement.one(root_order)
    for j in range(1, n + 1):
        result = result * q_integer(j, d_i, root_order)
    return result


def q_binomial(n: int, k: int, d_i: int = 1, root_order: int = 1) -> FieldElement:
    if not 0 <= k <= n:
        raise FieldArithmeticError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    result = q_factorial(n, d_i, root_order) / (
        q_factorial(k, d_i, root_order) * q_factorial(n - k, d_i, root_order)
    )
    if not result.is_laurent():
        raise ConsistencyError(f"q-binomial [{n} choose {k}] did not divide exactly")
    return result


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 h + ... + c_K h^K mod h^(K+1)"""

    coefficients: Tuple[Rational, ...]

    def __post_init__(self):
        if len(self.coefficients) - 1 < MIN_SERIES_ORDER:
            raise FieldArithmeticError(
                f"truncation order must be at least {MIN_SERIES_ORDER}"
            )
        object.__setattr__(self, "coefficients", tuple(Rational(c) for c in self.coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def constant(cls, c: Scalar, order: int) -> "TruncatedSeries":
        return cls((Rational(c),) + (Rational(0),) * order)

    def coefficient(self, j: int) -> Rational:
        return self.coefficients[j] if j <= self.order else Rational(0)

    def _check(self, other: "TruncatedSeries"):
        if other.order != self.order:
            raise FieldArithmeticError(
                f"truncation orders differ: {self.order} and {other.order}"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-a for a in self.coefficients))

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(tuple(a * Rational(other) for a in self.coefficients))
        self._check(other)
        K = self.order
        return TruncatedSeries(tuple(
            sum((self.coefficients[i] * other.coefficients[j - i] for i in range(j + 1)), Rational(0))
            for j in range(K + 1)
        ))

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        b = other.coefficients
        if b[0] == 0:
            raise FieldArithmeticError("series division by a non-unit")
        quotient: List[Rational] = []
        for j in range(self.order + 1):
            acc = self.coefficients[j] - sum(
                (quotient[i] * b[j - i] for i in range(j)), Rational(0)
            )
            quotient.append(acc / b[0])
        return TruncatedSeries(tuple(quotient))

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coefficients):
            if c == 0:
                continue
            power = "" if j == 0 else ("h" if j == 1 else f"h^{j}")
            parts.append(str(c) if not power else (power if c == 1 else f"{c}*{power}"))
        return " + ".join(parts) if parts else "0"


def _poly_at_exp_h(poly, root_order: int, order: int) -> TruncatedSeries:
    """P(e^{h/D}) = sum_k c_k sum_j (k/D)^j h^j / j!"""
    terms = poly_terms(poly)
    return TruncatedSeries(tuple(
        sum((c * Rational(e, root_order) ** j for e, c in terms), Rational(0)) / factorial(j)
        for j in range(order + 1)
    ))


def expand_at_q_eq_exp_h(x: FieldElement, order: int = MIN_SERIES_ORDER) -> TruncatedSeries:
    """
    Taylor expansion in h of x at q = e^h

    Args:
        x: Element without a pole at q = 1
        order: Truncation order K

    Returns:
        Coefficients c_0..c_K
    """
    num = _poly_at_exp_h(x.value.numer, x.root_order, order)
    den = _poly_at_exp_h(x.value.denom, x.root_order, order)
    if den.coefficient(0) == 0:
        raise PoleAtOneError(x._render_denominator())
    return num / den


def evaluate_at_q1(x: FieldElement) -> Rational:
    return x.evaluate_at_q1()


def render(value, root_order: int) -> str:
    """Canonical text of a raw fraction field element"""
    return FieldElement(value, root_order).to_text()
