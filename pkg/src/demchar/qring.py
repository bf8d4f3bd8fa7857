"""Exact sparse Laurent polynomials in q with half-integer exponents.

Exponents live in (1/2)Z and are stored as doubled integers so that all
arithmetic is integer-only. Coefficients are arbitrary-precision ints.
The zero polynomial is the empty term map.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

ExpLike = Union[int, Fraction]


def _double(exp: ExpLike) -> int:
    """Convert an exponent in (1/2)Z to its doubled-integer encoding."""
    if isinstance(exp, int):
        return 2 * exp
    frac = Fraction(exp)
    doubled = frac * 2
    if doubled.denominator != 1:
        raise ValueError(f"exponent {exp} is not a half-integer")
    return int(doubled)


class InexactDivisionError(ArithmeticError):
    """Raised when a Laurent division leaves a remainder; carries it."""

    def __init__(self, remainder: "LaurentPoly"):
        super().__init__(f"division is not exact; remainder {remainder}")
        self.remainder = remainder


class LaurentPoly:
    """Immutable sparse Laurent polynomial in q.

    The internal map sends doubled exponents to nonzero integer
    coefficients; construct via :meth:`zero`, :meth:`one`,
    :meth:`monomial`, :meth:`from_terms`, or arithmetic.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None, *, _trusted: bool = False):
        if terms is None:
            self._terms: dict[int, int] = {}
        elif _trusted:
            self._terms = dict(terms)
        else:
            self._terms = {int(e): int(c) for e, c in terms.items() if c != 0}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1}, _trusted=True)

    @classmethod
    def monomial(cls, coeff: int, exp: ExpLike = 0) -> "LaurentPoly":
        """coeff * q^exp, exp an int or half-integer Fraction."""
        if coeff == 0:
            return cls.zero()
        return cls({_double(exp): int(coeff)}, _trusted=True)

    @classmethod
    def q_power(cls, exp: ExpLike) -> "LaurentPoly":
        return cls.monomial(1, exp)

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[ExpLike, int]]) -> "LaurentPoly":
        terms: dict[int, int] = {}
        for exp, coeff in pairs:
            key = _double(exp)
            value = terms.get(key, 0) + int(coeff)
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return cls(terms, _trusted=True)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: ExpLike) -> int:
        return self._terms.get(_double(exp), 0)

    def terms(self) -> Iterator[tuple[Fraction, int]]:
        """Yield (exponent, coefficient) pairs sorted by exponent."""
        for key in sorted(self._terms):
            yield Fraction(key, 2), self._terms[key]

    def support_min(self) -> Fraction | None:
        return Fraction(min(self._terms), 2) if self._terms else None

    def support_max(self) -> Fraction | None:
        return Fraction(max(self._terms), 2) if self._terms else None

    def eval_at_one(self) -> int:
        """Sum of coefficients, i.e. the specialization q = 1."""
        return sum(self._terms.values())

    def shift(self, exp: ExpLike) -> "LaurentPoly":
        """Multiply by q^exp."""
        offset = _double(exp)
        if offset == 0:
            return self
        return LaurentPoly({e + offset: c for e, c in self._terms.items()}, _trusted=True)

    def scale_exponents(self, factor: int) -> "LaurentPoly":
        """Substitute q -> q^factor (factor a positive integer)."""
        if factor <= 0:
            raise ValueError("factor must be positive")
        return LaurentPoly({e * factor: c for e, c in self._terms.items()}, _trusted=True)

    def truncate(self, max_exp: ExpLike) -> "LaurentPoly":
        """Drop all terms with exponent strictly above max_exp."""
        cap = _double(max_exp)
        return LaurentPoly({e: c for e, c in self._terms.items() if e <= cap}, _trusted=True)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        result = dict(self._terms)
        for exp, coeff in other._terms.items():
            value = result.get(exp, 0) + coeff
            if value:
                result[exp] = value
            else:
                del result[exp]
        return LaurentPoly(result, _trusted=True)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero()
            return LaurentPoly({e: c * other for e, c in self._terms.items()}, _trusted=True)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self._terms) > len(other._terms):
            longer, shorter = self._terms, other._terms
        else:
            longer, shorter = other._terms, self._terms
        result: dict[int, int] = {}
        for e1, c1 in shorter.items():
            for e2, c2 in longer.items():
                key = e1 + e2
                value = result.get(key, 0) + c1 * c2
                if value:
                    result[key] = value
                else:
                    del result[key]
        return LaurentPoly(result, _trusted=True)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for exp, coeff in self.terms():
            if exp == 0:
                body = str(abs(coeff))
            else:
                power = "q" if exp == 1 else f"q^{exp}" if exp.denominator == 1 else f"q^({exp})"
                body = power if abs(coeff) == 1 else f"{abs(coeff)}*{power}"
            sign = "-" if coeff < 0 else "+"
            chunks.append(f"{sign} {body}")
        text = " ".join(chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json_obj(self) -> dict:
        """{"terms": [[doubled_exponent, coeff_string], ...]} sorted ascending."""
        return {"terms": [[e, str(self._terms[e])] for e in sorted(self._terms)]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in obj["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()


def qfactorial(m: int, base_exp: int = 1) -> LaurentPoly:
    """prod_{i=1..m} (1 - q^(base_exp*i)); 1 when m = 0."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    result = ONE
    for i in range(1, m + 1):
        result = result * (ONE - LaurentPoly.q_power(base_exp * i))
    return result


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient num/den in the Laurent ring.

    Raises InexactDivisionError (carrying the remainder) when den does not
    divide num, and ZeroDivisionError when den is zero.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return ZERO
    den_terms = sorted(den._terms.items())
    den_low_exp, den_low_coeff = den_terms[0]
    # The quotient's lowest term is forced: no cancellation can occur at the
    # minimal exponent, so integer divisibility there is necessary for exactness.
    max_quot_exp = max(num._terms) - max(den._terms)
    remainder = dict(num._terms)
    quotient: dict[int, int] = {}
    while remainder:
        rem_low_exp = min(remainder)
        rem_low_coeff = remainder[rem_low_exp]
        quot_exp = rem_low_exp - den_low_exp
        quot_coeff, leftover = divmod(rem_low_coeff, den_low_coeff)
        if leftover != 0 or quot_exp > max_quot_exp:
            raise InexactDivisionError(LaurentPoly(remainder, _trusted=True))
        quotient[quot_exp] = quot_coeff
        for exp, coeff in den_terms:
            key = exp + quot_exp
            value = remainder.get(key, 0) - coeff * quot_coeff
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return LaurentPoly(quotient, _trusted=True)


def qmultinomial(j: int, gamma: Iterable[int], base_exp: int = 1) -> LaurentPoly:
    """(q)_j / prod_b (q)_{gamma_b} when j = sum(gamma) with all parts >= 0.

    Returns the zero polynomial otherwise. base_exp = 2 substitutes q -> q^2
    throughout. Division must be exact; a remainder signals an arithmetic bug.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    parts = list(gamma)
    if any(g < 0 for g in parts) or sum(parts) != j:
        return ZERO
    num = qfactorial(j, base_exp)
    den = ONE
    for g in parts:
        den = den * qfactorial(g, base_exp)
    return exact_div(num, den)
