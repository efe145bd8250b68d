"""Exact Laurent polynomials in one variable with integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial ``sum c_e A^e``; zero terms are dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            e, c = int(e), int(c)
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    # construction -------------------------------------------------------------

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coefficient})

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentPolynomial":
        return cls((e, c) for e, c in pairs)

    # access -------------------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return next(reversed(self._terms))

    @property
    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return next(iter(self._terms))

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        other = _coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "LaurentPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        other = _coerce(other)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have negative powers")
            return LaurentPolynomial({e * n: c ** (-n)})
        result = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPolynomial":
        """Substitute ``A -> A^-1``."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def divmod_exact(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial | None":
        """Quotient if ``divisor`` divides ``self`` in Z[A, A^-1], else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial.zero()
        lead_e, lead_c = divisor.max_degree, divisor.coefficient(divisor.max_degree)
        low = divisor.min_degree
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        floor = self.min_degree - low
        while rem:
            top = max(rem)
            qe = top - lead_e
            if qe < floor:
                return None
            c = rem[top]
            if c % lead_c:
                return None
            qc = c // lead_c
            quot[qe] = qc
            for e, dc in divisor._terms.items():
                v = rem.get(e + qe, 0) - qc * dc
                if v:
                    rem[e + qe] = v
                else:
                    rem.pop(e + qe, None)
        return LaurentPolynomial(quot)

    # comparison and display ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return isinstance(other, LaurentPolynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self})"

    def __str__(self) -> str:
        return format_terms(self._terms.items(), "A")


def _coerce(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial({0: x})
    return NotImplemented  # type: ignore[return-value]


def format_terms(items: Iterable[tuple[object, int]], var: str) -> str:
    parts = []
    for e, c in sorted(items, key=lambda t: t[0], reverse=True):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = "" if e == 1 else f"^{e}"
            body = f"{var}{power}" if mag == 1 else f"{mag}{var}{power}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def quarter_terms(poly: LaurentPolynomial) -> list[tuple[Fraction, int]]:
    """Terms of a polynomial in ``A`` read in ``t = A^4``."""
    return [(Fraction(e, 4), c) for e, c in poly.items()]


DELTA = LaurentPolynomial({2: -1, -2: -1})
