"""
Exact multivariate Laurent polynomials with integer coefficients.

A value is a map from exponent tuples (entries may be negative) to nonzero
Python ints, stored sorted so that equal values compare and hash equal.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping

import sympy as sp

from .errors import DivisibilityError, InvalidInputError

logger = logging.getLogger(__name__)

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial in x1 ... x_nvars."""
    nvars: int
    terms: tuple[tuple[Exponents, int], ...] = ()

    def __post_init__(self):
        merged: dict[Exponents, int] = {}
        for exps, coeff in self.terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise InvalidInputError(
                    f"Exponent tuple {exps} has length {len(exps)}, expected {self.nvars}"
                )
            merged[exps] = merged.get(exps, 0) + int(coeff)
        object.__setattr__(
            self, "terms", tuple(sorted((e, c) for e, c in merged.items() if c))
        )

    @classmethod
    def from_dict(cls, nvars: int, mapping: Mapping[Exponents, int]) -> "LaurentPoly":
        return cls(nvars, tuple(mapping.items()))

    def as_dict(self) -> dict[Exponents, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return add(self, other)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return sub(self, other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return mul(self, other)

    def __neg__(self) -> "LaurentPoly":
        return neg(self)

    def __pow__(self, k: int) -> "LaurentPoly":
        return power(self, k)

    def __truediv__(self, other: "LaurentPoly") -> "LaurentPoly":
        return exact_div(self, other)

    def __str__(self) -> str:
        return canonical_string(self)


def _check_same(a: LaurentPoly, b: LaurentPoly) -> None:
    if a.nvars != b.nvars:
        raise InvalidInputError(f"Variable count mismatch: {a.nvars} vs {b.nvars}")


def zero(nvars: int) -> LaurentPoly:
    return LaurentPoly(nvars)


def constant(value: int, nvars: int) -> LaurentPoly:
    return LaurentPoly(nvars, (((0,) * nvars, value),))


def monomial(exps: Iterable[int], coeff: int = 1) -> LaurentPoly:
    """Single term coeff * x^exps."""
    exps = tuple(exps)
    return LaurentPoly(len(exps), ((exps, coeff),))


def variable(i: int, nvars: int) -> LaurentPoly:
    """The variable x_i (1-based)."""
    if not 1 <= i <= nvars:
        raise InvalidInputError(f"Variable x{i} outside x1..x{nvars}")
    exps = [0] * nvars
    exps[i - 1] = 1
    return monomial(exps)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_same(a, b)
    return LaurentPoly(a.nvars, a.terms + b.terms)


def neg(a: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(a.nvars, tuple((e, -c) for e, c in a.terms))


def sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return add(a, neg(b))


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_same(a, b)
    out: dict[Exponents, int] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return LaurentPoly.from_dict(a.nvars, out)


def power(a: LaurentPoly, k: int) -> LaurentPoly:
    """Non-negative powers; negative powers only for monomials."""
    if k < 0:
        if not is_monomial(a):
            raise DivisibilityError(f"Cannot invert non-monomial {a}")
        (exps, coeff), = a.terms
        if coeff not in (1, -1):
            raise DivisibilityError(f"Cannot invert coefficient {coeff}")
        return monomial((e * k for e in exps), coeff ** -k)
    result = constant(1, a.nvars)
    for _ in range(k):
        result = mul(result, a)
    return result


def is_monomial(a: LaurentPoly) -> bool:
    return len(a.terms) == 1


def _shift(mapping: dict[Exponents, int], by: Exponents) -> dict[Exponents, int]:
    return {
        tuple(x + y for x, y in zip(exps, by)): coeff
        for exps, coeff in mapping.items()
    }


def _min_exponents(a: LaurentPoly) -> Exponents:
    return tuple(min(col) for col in zip(*(e for e, _ in a.terms)))


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """
    Quotient q with q * b == a in the Laurent ring over the integers.

    Both operands are shifted into the polynomial ring (b losing its
    monomial content), then reduced by lexicographic leading terms. Any
    leading term of the remainder that b's leading term does not divide,
    or a nonzero final remainder, raises DivisibilityError.
    """
    _check_same(a, b)
    if b.is_zero():
        raise DivisibilityError("Division by the zero Laurent polynomial")
    if a.is_zero():
        return a

    min_a = _min_exponents(a)
    min_b = _min_exponents(b)
    remainder = _shift(a.as_dict(), tuple(-e for e in min_a))
    divisor = _shift(b.as_dict(), tuple(-e for e in min_b))
    lead_exps = max(divisor)
    lead_coeff = divisor[lead_exps]

    quotient: dict[Exponents, int] = {}
    while remainder:
        exps = max(remainder)
        coeff = remainder[exps]
        step = tuple(x - y for x, y in zip(exps, lead_exps))
        if min(step, default=0) < 0 or coeff % lead_coeff:
            raise DivisibilityError(f"{a} is not divisible by {b}")
        factor = coeff // lead_coeff
        quotient[step] = factor
        for d_exps, d_coeff in divisor.items():
            key = tuple(x + y for x, y in zip(step, d_exps))
            value = remainder.get(key, 0) - factor * d_coeff
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)

    offset = tuple(x - y for x, y in zip(min_a, min_b))
    return LaurentPoly.from_dict(a.nvars, _shift(quotient, offset))


def denominator_exponents(a: LaurentPoly) -> Exponents:
    """Exponents of the smallest monomial clearing every negative power."""
    if a.is_zero():
        return (0,) * a.nvars
    return tuple(max(0, -m) for m in _min_exponents(a))


def numerator(a: LaurentPoly) -> LaurentPoly:
    """a multiplied by its monomial denominator."""
    return LaurentPoly.from_dict(a.nvars, _shift(a.as_dict(), denominator_exponents(a)))


def has_positive_numerator(a: LaurentPoly) -> bool:
    return bool(a.terms) and all(c > 0 for _, c in a.terms)


def total_degree(exps: Exponents) -> int:
    return sum(exps)


def _render_monomial(exps: Exponents) -> str:
    factors = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            factors.append(f"x{i}")
        elif e:
            factors.append(f"x{i}^{e}")
    return "*".join(factors)


def canonical_string(a: LaurentPoly) -> str:
    """
    Render as numerator over a monomial denominator.

    Numerator terms go by total degree, then exponent tuple, ascending:
    (x2 + x4 + x1 x3 x4)/(x2 x3) renders as "(x4 + x2 + x1*x3*x4)/(x2*x3)".
    """
    if a.is_zero():
        return "0"
    denom = denominator_exponents(a)
    num_terms = sorted(
        _shift(a.as_dict(), denom).items(),
        key=lambda item: (total_degree(item[0]), item[0]),
    )

    parts = []
    for k, (exps, coeff) in enumerate(num_terms):
        mono = _render_monomial(exps)
        magnitude = abs(coeff)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if k == 0:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    text = "".join(parts)

    if not any(denom):
        return text
    if len(num_terms) > 1:
        text = f"({text})"
    denom_text = _render_monomial(denom)
    if sum(1 for e in denom if e) > 1:
        denom_text = f"({denom_text})"
    return f"{text}/{denom_text}"


def sort_key(a: LaurentPoly) -> tuple:
    return (len(a.terms), canonical_string(a))


def symbols(nvars: int) -> list[sp.Symbol]:
    return list(sp.symbols(f"x1:{nvars + 1}")) if nvars else []


def to_sympy(a: LaurentPoly) -> sp.Expr:
    gens = symbols(a.nvars)
    expr = sp.Integer(0)
    for exps, coeff in a.terms:
        term = sp.Integer(coeff)
        for g, e in zip(gens, exps):
            term *= g ** e
        expr += term
    return expr


def parse_laurent(text: str, nvars: int) -> LaurentPoly:
    """
    Parse a rendered Laurent polynomial ("^" or "**" powers).

    The expression is brought over a common denominator with sympy; that
    denominator has to be a monomial.
    """
    gens = symbols(nvars)
    local = {str(g): g for g in gens}
    try:
        expr = sp.sympify(text, locals=local, convert_xor=True)
    except (sp.SympifyError, SyntaxError, TypeError) as e:
        raise InvalidInputError(f"Cannot parse Laurent polynomial {text!r}: {e}")
    unknown = expr.free_symbols - set(gens)
    if unknown:
        raise InvalidInputError(f"Unknown symbols {sorted(map(str, unknown))} in {text!r}")
    if not gens:
        if not expr.is_Integer:
            raise InvalidInputError(f"Not an integer constant: {text!r}")
        return constant(int(expr), 0)

    num, den = sp.fraction(sp.together(expr))
    den_poly = sp.Poly(den, *gens)
    if len(den_poly.terms()) != 1:
        raise InvalidInputError(f"Denominator of {text!r} is not a monomial")
    (den_exps, den_coeff), = den_poly.terms()

    out: dict[Exponents, int] = {}
    for exps, coeff in sp.Poly(num, *gens).terms():
        value = sp.Rational(coeff) / den_coeff
        if not value.is_Integer:
            raise InvalidInputError(f"Non-integer coefficient in {text!r}")
        key = tuple(x - y for x, y in zip(exps, den_exps))
        out[key] = int(value)
    return LaurentPoly.from_dict(nvars, out)
