# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""
Exact arithmetic for graded-decomp.

Integer Laurent polynomials in v carry graded multiplicities and canonical
basis coefficients. Elements of the cyclotomic field Q(z), z a primitive
e-th root of unity, carry the entries of every Hecke algebra representation
matrix. Dense exact linear algebra over Q(z) sits on top: rank, nullspace,
inversion, generalized eigenprojections and an incremental echelon basis.

Nothing here uses floating point.
"""

import re
from bisect import bisect_left
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DivisionError, SingularError, SpectrumError

Rational = Union[int, Fraction]

LAURENT_VARIABLE = "v"
CYCLOTOMIC_VARIABLE = "z"

_LAURENT_TERM = re.compile(r"([+-]?)(\d*)(?:(v)(?:\^(-?\d+))?)?")
_CYCLO_TERM = re.compile(r"([+-]?)(\d*)(?:(z)(?:\^(\d+))?)?")


class LaurentPoly:
    """Integer Laurent polynomial in v, stored as exponent -> nonzero coefficient"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, int]] = None) -> None:
        self._terms: Dict[int, int] = {}
        if terms:
            for exponent, coefficient in terms.items():
                if coefficient:
                    self._terms[int(exponent)] = int(coefficient)

    @classmethod
    def from_int(cls, value: int) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def v(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def _coerce(cls, other: object) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return cls.from_int(other)
        return None

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def __eq__(self, other: object) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self._terms == coerced._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for exponent in sorted(self._terms, reverse=True):
            coefficient = self._terms[exponent]
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            if exponent == 0:
                body = str(magnitude)
            else:
                power = LAURENT_VARIABLE if exponent == 1 else f"{LAURENT_VARIABLE}^{exponent}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            pieces.append(f"{sign}{body}")
        text = "".join(pieces)
        return text[1:] if text.startswith("+") else text

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the output of ``str`` back into a polynomial"""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls()
        terms: Dict[int, int] = {}
        position = 0
        while position < len(text):
            match = _LAURENT_TERM.match(text, position)
            if match is None or match.end() == position:
                raise ValueError(f"Cannot parse Laurent polynomial: {text!r}")
            sign, digits, variable, power = match.groups()
            if not digits and not variable:
                raise ValueError(f"Cannot parse Laurent polynomial: {text!r}")
            magnitude = int(digits) if digits else 1
            exponent = (int(power) if power else 1) if variable else 0
            terms[exponent] = terms.get(exponent, 0) + (-magnitude if sign == "-" else magnitude)
            position = match.end()
        return cls(terms)

    def to_pairs(self) -> List[List[int]]:
        """[exponent, coefficient] pairs, descending exponent"""
        return [[k, self._terms[k]] for k in sorted(self._terms, reverse=True)]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "LaurentPoly":
        terms: Dict[int, int] = {}
        for exponent, coefficient in pairs:
            terms[int(exponent)] = terms.get(int(exponent), 0) + int(coefficient)
        return cls(terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __add__(self, other: object) -> "LaurentPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, coefficient in coerced._terms.items():
            result[exponent] = result.get(exponent, 0) + coefficient
        return LaurentPoly(result)

    def __radd__(self, other: object) -> "LaurentPoly":
        return self.__add__(other)

    def __sub__(self, other: object) -> "LaurentPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: object) -> "LaurentPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced - self

    def __mul__(self, other: object) -> "LaurentPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        result: Dict[int, int] = {}
        for a, x in self._terms.items():
            for b, y in coerced._terms.items():
                result[a + b] = result.get(a + b, 0) + x * y
        return LaurentPoly(result)

    def __rmul__(self, other: object) -> "LaurentPoly":
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((k, c),) = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly({k * exponent: c ** abs(exponent)})
        result = LaurentPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def bar(self) -> "LaurentPoly":
        """Bar involution v -> v^-1"""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k"""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def is_bar_symmetric(self) -> bool:
        return self == self.bar()

    def evaluate(self, value: Rational = 1) -> Rational:
        total: Rational = 0
        for exponent, coefficient in self._terms.items():
            total += coefficient * Fraction(value) ** exponent
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def in_positive_part(self) -> bool:
        """True when every exponent is at least one, that is the polynomial lies in vZ[v]"""
        return all(k >= 1 for k in self._terms)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Z[v, v^-1]; raises DivisionError if there is a remainder"""
        if divisor.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return LaurentPoly()
        low_a, low_b = self.min_degree(), divisor.min_degree()
        remainder = [self.coefficient(low_a + i) for i in range(self.max_degree() - low_a + 1)]
        denominator = [divisor.coefficient(low_b + i) for i in range(divisor.max_degree() - low_b + 1)]
        lead = denominator[-1]
        quotient: Dict[int, int] = {}
        for top in range(len(remainder) - 1, len(denominator) - 2, -1):
            value = remainder[top]
            if value == 0:
                continue
            if value % lead:
                raise DivisionError(f"{self} is not divisible by {divisor}")
            factor = value // lead
            degree = top - (len(denominator) - 1)
            quotient[degree] = factor
            for j, d in enumerate(denominator):
                remainder[degree + j] -= factor * d
        if any(remainder):
            raise DivisionError(f"{self} is not divisible by {divisor}")
        return LaurentPoly(quotient).shift(low_a - low_b)


def bar_involute(a: LaurentPoly) -> LaurentPoly:
    return a.bar()


@lru_cache(maxsize=None)
def quantum_integer(k: int) -> LaurentPoly:
    """Balanced quantum integer [k] = (v^k - v^-k) / (v - v^-1)"""
    if k < 0:
        return -quantum_integer(-k)
    return LaurentPoly({k - 1 - 2 * j: 1 for j in range(k)})


@lru_cache(maxsize=None)
def quantum_factorial(k: int) -> LaurentPoly:
    if k < 0:
        raise ValueError("quantum factorial needs k >= 0")
    result = LaurentPoly.one()
    for j in range(1, k + 1):
        result = result * quantum_integer(j)
    return result


def _int_poly_divide(numerator: List[int], monic: Sequence[int]) -> List[int]:
    """Exact division of integer polynomials (low degree first) by a monic divisor"""
    remainder = list(numerator)
    degree = len(monic) - 1
    quotient = [0] * (len(remainder) - degree)
    for top in range(len(remainder) - 1, degree - 1, -1):
        factor = remainder[top]
        if factor:
            quotient[top - degree] = factor
            for j, c in enumerate(monic):
                remainder[top - degree + j] -= factor * c
    if any(remainder):
        raise ArithmeticError("cyclotomic recursion left a remainder")
    return quotient


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> Tuple[int, ...]:
    """Coefficients of the e-th cyclotomic polynomial, constant term first"""
    if e < 1:
        raise ValueError("cyclotomic polynomial needs e >= 1")
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            poly = _int_poly_divide(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class CycloField:
    """The field Q(z) with z a primitive e-th root of unity"""

    def __init__(self, e: int) -> None:
        if e < 2:
            raise ValueError("the root of unity must have order e >= 2")
        self.e = e
        self.modulus = cyclotomic_polynomial(e)
        self.degree = len(self.modulus) - 1
        self.zero = CycloNum(self, ())
        self.one = CycloNum(self, (1,))

    def __repr__(self) -> str:
        return f"CycloField(e={self.e})"

    def reduce(self, coeffs: Sequence[Rational]) -> Tuple[Fraction, ...]:
        work = [Fraction(c) for c in coeffs]
        phi = self.degree
        for top in range(len(work) - 1, phi - 1, -1):
            c = work[top]
            if c:
                base = top - phi
                for j in range(phi):
                    m = self.modulus[j]
                    if m:
                        work[base + j] -= c * m
                work[top] = Fraction(0)
        work = work[:phi]
        work.extend(Fraction(0) for _ in range(phi - len(work)))
        return tuple(work)

    def __call__(self, value: Union[Rational, "CycloNum"]) -> "CycloNum":
        if isinstance(value, CycloNum):
            return value
        return CycloNum(self, (value,))

    def q_power(self, i: int) -> "CycloNum":
        """z^i for any integer i"""
        return _q_power(self.e, i % self.e)

    @property
    def q(self) -> "CycloNum":
        return self.q_power(1)


@lru_cache(maxsize=None)
def cyclotomic_field(e: int) -> CycloField:
    return CycloField(e)


@lru_cache(maxsize=None)
def _q_power(e: int, i: int) -> "CycloNum":
    field = cyclotomic_field(e)
    return CycloNum(field, (0,) * i + (1,))


class CycloNum:
    """Element of Q(z), stored as a reduced rational coefficient vector"""

    __slots__ = ("field", "coeffs", "_zero")

    def __init__(self, field: CycloField, coeffs: Sequence[Rational]) -> None:
        self.field = field
        self.coeffs: Tuple[Fraction, ...] = field.reduce(coeffs)
        self._zero = not any(self.coeffs)

    def _coerce(self, other: object) -> Optional["CycloNum"]:
        if isinstance(other, CycloNum):
            if other.field.e != self.field.e:
                raise ValueError(f"cannot mix Q(z_{self.field.e}) and Q(z_{other.field.e})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.field, (other,))
        return None

    def is_zero(self) -> bool:
        return self._zero

    def __bool__(self) -> bool:
        return not self._zero

    def __eq__(self, other: object) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.coeffs == coerced.coeffs

    def __hash__(self) -> int:
        return hash((self.field.e, self.coeffs))

    def __repr__(self) -> str:
        return f"CycloNum(e={self.field.e}, {self})"

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.field, [-c for c in self.coeffs])

    def __add__(self, other: object) -> "CycloNum":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        if coerced._zero:
            return self
        if self._zero:
            return coerced
        return CycloNum(self.field, [a + b for a, b in zip(self.coeffs, coerced.coeffs)])

    def __radd__(self, other: object) -> "CycloNum":
        return self.__add__(other)

    def __sub__(self, other: object) -> "CycloNum":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        if coerced._zero:
            return self
        return CycloNum(self.field, [a - b for a, b in zip(self.coeffs, coerced.coeffs)])

    def __rsub__(self, other: object) -> "CycloNum":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced - self

    def __mul__(self, other: object) -> "CycloNum":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        if self._zero or coerced._zero:
            return self.field.zero
        product = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(coerced.coeffs):
                    if b:
                        product[i + j] += a * b
        return CycloNum(self.field, product)

    def __rmul__(self, other: object) -> "CycloNum":
        return self.__mul__(other)

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse by the extended Euclidean algorithm against the modulus"""
        if self._zero:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        r0 = _ptrim([Fraction(c) for c in self.field.modulus])
        r1 = _ptrim(list(self.coeffs))
        s0: List[Fraction] = []
        s1: List[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            quotient, remainder = _pdivmod(r0, r1)
            r0, r1 = r1, remainder
            s0, s1 = s1, _psub(s0, _pmul(quotient, s1))
        scale = 1 / r1[0]
        return CycloNum(self.field, [c * scale for c in s1])

    def __truediv__(self, other: object) -> "CycloNum":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self * coerced.inverse()

    def __rtruediv__(self, other: object) -> "CycloNum":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced * self.inverse()

    def __pow__(self, exponent: int) -> "CycloNum":
        base = self if exponent >= 0 else self.inverse()
        result = self.field.one
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __str__(self) -> str:
        """Integer-coefficient polynomial in z over a common denominator"""
        if self._zero:
            return "0"
        denominator = 1
        for c in self.coeffs:
            denominator = denominator * c.denominator // _gcd(denominator, c.denominator)
        pieces: List[str] = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            numerator = int(self.coeffs[power] * denominator)
            if numerator == 0:
                continue
            sign = "-" if numerator < 0 else "+"
            magnitude = abs(numerator)
            if power == 0:
                body = str(magnitude)
            else:
                variable = CYCLOTOMIC_VARIABLE if power == 1 else f"{CYCLOTOMIC_VARIABLE}^{power}"
                body = variable if magnitude == 1 else f"{magnitude}{variable}"
            pieces.append(f"{sign}{body}")
        text = "".join(pieces)
        text = text[1:] if text.startswith("+") else text
        if denominator == 1:
            return text
        if len(pieces) > 1:
            text = f"({text})"
        return f"{text}/{denominator}"

    @classmethod
    def parse(cls, field: CycloField, text: str) -> "CycloNum":
        text = text.replace(" ", "")
        denominator = 1
        if "/" in text:
            text, tail = text.rsplit("/", 1)
            denominator = int(tail)
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        if text in ("", "0"):
            return field.zero
        coeffs: Dict[int, int] = {}
        position = 0
        while position < len(text):
            match = _CYCLO_TERM.match(text, position)
            if match is None or match.end() == position:
                raise ValueError(f"Cannot parse cyclotomic number: {text!r}")
            sign, digits, variable, power = match.groups()
            if not digits and not variable:
                raise ValueError(f"Cannot parse cyclotomic number: {text!r}")
            magnitude = int(digits) if digits else 1
            exponent = (int(power) if power else 1) if variable else 0
            coeffs[exponent] = coeffs.get(exponent, 0) + (-magnitude if sign == "-" else magnitude)
            position = match.end()
        top = max(coeffs)
        return CycloNum(
            field, [Fraction(coeffs.get(k, 0), denominator) for k in range(top + 1)]
        )


def cyclo_arith(a: CycloNum, b: CycloNum, op: str) -> CycloNum:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"Unknown operation: {op}")


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown operation: {op}")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _ptrim(p: List[Fraction]) -> List[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _psub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    size = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(size)
    ]
    return _ptrim(out) if out else [Fraction(0)]


def _pmul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    remainder = list(a)
    quotient = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for top in range(len(remainder) - 1, len(b) - 2, -1):
        factor = remainder[top] / lead
        if factor:
            shift = top - len(b) + 1
            quotient[shift] = factor
            for j, c in enumerate(b):
                remainder[shift + j] -= factor * c
    remainder = _ptrim(remainder[: max(1, len(b) - 1)])
    return _ptrim(quotient), remainder


Entry = Union[int, Fraction, CycloNum]


class CycloMatrix:
    """Dense matrix over Q(z); treated as immutable once built"""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: CycloField, entries: Sequence[Sequence[Entry]]) -> None:
        self.field = field
        self.entries: List[List[CycloNum]] = [[field(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("matrix rows have different lengths")

    @classmethod
    def zeros(cls, field: CycloField, rows: int, cols: Optional[int] = None) -> "CycloMatrix":
        cols = rows if cols is None else cols
        return cls(field, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: CycloField, size: int) -> "CycloMatrix":
        return cls.scalar(field, size, field.one)

    @classmethod
    def scalar(cls, field: CycloField, size: int, value: Entry) -> "CycloMatrix":
        value = field(value)
        return cls(
            field, [[value if i == j else field.zero for j in range(size)] for i in range(size)]
        )

    def __getitem__(self, index: Tuple[int, int]) -> CycloNum:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> List[CycloNum]:
        return list(self.entries[i])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(tuple(tuple(row) for row in self.entries))

    def __repr__(self) -> str:
        return f"CycloMatrix({self.to_strings()})"

    def to_strings(self) -> List[List[str]]:
        return [[str(x) for x in row] for row in self.entries]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == CycloMatrix.identity(self.field, self.rows)

    def _check_shape(self, other: "CycloMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check_shape(other)
        return CycloMatrix(
            self.field,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        self._check_shape(other)
        return CycloMatrix(
            self.field,
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
        )

    def __neg__(self) -> "CycloMatrix":
        return CycloMatrix(self.field, [[-a for a in row] for row in self.entries])

    def scale(self, value: Entry) -> "CycloMatrix":
        value = self.field(value)
        return CycloMatrix(self.field, [[value * a for a in row] for row in self.entries])

    def __mul__(self, other: Union["CycloMatrix", Entry]) -> "CycloMatrix":
        if not isinstance(other, CycloMatrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field.zero
        support = [[(j, x) for j, x in enumerate(row) if not x.is_zero()] for row in other.entries]
        product: List[List[CycloNum]] = []
        for row in self.entries:
            out = [zero] * other.cols
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                for j, b in support[k]:
                    out[j] = out[j] + a * b
            product.append(out)
        return CycloMatrix(self.field, product)

    def __rmul__(self, other: Entry) -> "CycloMatrix":
        return self.scale(other)

    def power(self, exponent: int) -> "CycloMatrix":
        result = CycloMatrix.identity(self.field, self.rows)
        for _ in range(exponent):
            result = result * self
        return result

    def transpose(self) -> "CycloMatrix":
        return CycloMatrix(self.field, [list(col) for col in zip(*self.entries)] or [])

    def trace(self) -> CycloNum:
        total = self.field.zero
        for i in range(min(self.rows, self.cols)):
            total = total + self.entries[i][i]
        return total

    def submatrix(self, rows: Sequence[int], cols: Optional[Sequence[int]] = None) -> "CycloMatrix":
        cols = range(self.cols) if cols is None else cols
        return CycloMatrix(self.field, [[self.entries[i][j] for j in cols] for i in rows])

    def apply_to_row(self, vector: Sequence[CycloNum]) -> List[CycloNum]:
        """Row vector times this matrix"""
        out = [self.field.zero] * self.cols
        for k, a in enumerate(vector):
            if a.is_zero():
                continue
            for j, b in enumerate(self.entries[k]):
                if not b.is_zero():
                    out[j] = out[j] + a * b
        return out

    def commutes_with(self, other: "CycloMatrix") -> bool:
        return self * other == other * self


def _rref(rows: List[List[CycloNum]], cols: int) -> Tuple[List[List[CycloNum]], List[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns"""
    work = [list(r) for r in rows]
    pivots: List[int] = []
    rank = 0
    for col in range(cols):
        found = next((i for i in range(rank, len(work)) if not work[i][col].is_zero()), None)
        if found is None:
            continue
        work[rank], work[found] = work[found], work[rank]
        inverse = work[rank][col].inverse()
        pivot_row = [x * inverse for x in work[rank]]
        work[rank] = pivot_row
        support = [j for j, x in enumerate(pivot_row) if not x.is_zero()]
        for i in range(len(work)):
            if i != rank and not work[i][col].is_zero():
                factor = work[i][col]
                target = work[i]
                for j in support:
                    target[j] = target[j] - factor * pivot_row[j]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def matrix_rank(m: CycloMatrix) -> int:
    return len(_rref(m.entries, m.cols)[1])


def matrix_rank_nullspace(m: CycloMatrix) -> Tuple[int, List[List[CycloNum]]]:
    """Exact rank and a basis of the right nullspace {x : m x = 0}"""
    reduced, pivots = _rref(m.entries, m.cols)
    field = m.field
    free = [c for c in range(m.cols) if c not in pivots]
    basis: List[List[CycloNum]] = []
    for f in free:
        vector = [field.zero] * m.cols
        vector[f] = field.one
        for row, p in zip(reduced, pivots):
            vector[p] = -row[f]
        basis.append(vector)
    return len(pivots), basis


def left_nullspace(m: CycloMatrix) -> List[List[CycloNum]]:
    """Basis of {y : y m = 0}"""
    return matrix_rank_nullspace(m.transpose())[1]


def matrix_inverse(m: CycloMatrix) -> CycloMatrix:
    if m.rows != m.cols:
        raise SingularError("only square matrices are invertible")
    size = m.rows
    field = m.field
    augmented = [
        list(row) + [field.one if i == j else field.zero for j in range(size)]
        for i, row in enumerate(m.entries)
    ]
    reduced, pivots = _rref(augmented, size)
    if pivots != list(range(size)):
        raise SingularError(f"{size}x{size} matrix is singular")
    return CycloMatrix(field, [row[size:] for row in reduced])


def nilpotent_inverse(u: CycloMatrix) -> CycloMatrix:
    """
    Inverse of u. When u is a nonzero scalar plus a nilpotent part the
    geometric series is used; otherwise falls back to elimination.
    """
    size = u.rows
    field = u.field
    if size == 0:
        return u
    scalar = u.trace() / size
    nilpotent = u - CycloMatrix.scalar(field, size, scalar)
    if not scalar.is_zero() and nilpotent.power(size).is_zero():
        step = nilpotent.scale(-scalar.inverse())
        term = CycloMatrix.identity(field, size)
        total = term
        for _ in range(1, size):
            term = term * step
            if term.is_zero():
                break
            total = total + term
        return total.scale(scalar.inverse())
    return matrix_inverse(u)


def eigen_spectrum(m: CycloMatrix) -> List[int]:
    """
    Exponents i in Z/e with z^i an eigenvalue of m. Raises SpectrumError when
    the characteristic polynomial has a root outside the e-th roots of unity.
    """
    field = m.field
    size = m.rows
    found: List[int] = []
    annihilator = CycloMatrix.identity(field, size)
    for i in range(field.e):
        shifted = m - CycloMatrix.scalar(field, size, field.q_power(i))
        if matrix_rank(shifted) < size:
            found.append(i)
            annihilator = annihilator * shifted.power(size)
    if not annihilator.is_zero():
        raise SpectrumError("matrix has eigenvalues outside the e-th roots of unity")
    return found


def _series_mul(a: List[CycloNum], b: List[CycloNum], order: int) -> List[CycloNum]:
    field = a[0].field
    out = [field.zero] * min(order, len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j < len(out):
                out[i + j] = out[i + j] + x * y
    return out


def _series_inverse(a: List[CycloNum], order: int) -> List[CycloNum]:
    field = a[0].field
    lead = a[0].inverse()
    out = [lead]
    for k in range(1, order):
        total = field.zero
        for j in range(1, min(k, len(a) - 1) + 1):
            total = total + a[j] * out[k - j]
        out.append(-total * lead)
    return out


def generalized_eigenprojection(
    m: CycloMatrix, eigenvalue: CycloNum, nilpotency_bound: Optional[int] = None
) -> CycloMatrix:
    """
    Projection onto the generalized eigenspace of ``eigenvalue``.

    The projection is p(m) where p is 1 modulo (x - eigenvalue)^N and 0 modulo
    (x - mu)^N for every other eigenvalue mu; N defaults to the dimension.
    Returns the zero matrix when ``eigenvalue`` is not in the spectrum.
    """
    field = m.field
    size = m.rows
    bound = nilpotency_bound or max(size, 1)
    spectrum = [field.q_power(i) for i in eigen_spectrum(m)]
    if eigenvalue not in spectrum:
        return CycloMatrix.zeros(field, size)
    others = [mu for mu in spectrum if mu != eigenvalue]
    if not others:
        return CycloMatrix.identity(field, size)

    # expand g(x) = prod (x - mu)^N around x = eigenvalue and invert it as a power series
    series = [field.one]
    annihilator = CycloMatrix.identity(field, size)
    for mu in others:
        factor = [eigenvalue - mu, field.one]
        for _ in range(bound):
            series = _series_mul(series, factor, bound)
        annihilator = annihilator * (m - CycloMatrix.scalar(field, size, mu)).power(bound)
    inverse = _series_inverse(series, bound)

    shifted = m - CycloMatrix.scalar(field, size, eigenvalue)
    correction = CycloMatrix.zeros(field, size)
    for coefficient in reversed(inverse):
        correction = correction * shifted + CycloMatrix.scalar(field, size, coefficient)
    return annihilator * correction


class EchelonBasis:
    """
    Row echelon basis of a subspace of Q(z)^dim, built by incremental insertion.

    Inserted vectors may carry a label; for labeled vectors the basis tracks
    how each echelon row combines them, so ``express`` can return coordinates
    on the labeled vectors modulo the span of the unlabeled ones.
    """

    def __init__(self, field: CycloField, dim: int) -> None:
        self.field = field
        self.dim = dim
        self._pivots: List[int] = []
        self._rows: List[List[CycloNum]] = []
        self._supports: List[List[int]] = []
        self._combos: List[Dict[Hashable, CycloNum]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(
        self, vector: Sequence[CycloNum]
    ) -> Tuple[List[CycloNum], Dict[Hashable, CycloNum]]:
        """Return (residual, combination) with vector = residual + sum of tracked combination"""
        residual = list(vector)
        combination: Dict[Hashable, CycloNum] = {}
        for pivot, row, support, combo in zip(self._pivots, self._rows, self._supports, self._combos):
            c = residual[pivot]
            if c.is_zero():
                continue
            for j in support:
                residual[j] = residual[j] - c * row[j]
            for label, weight in combo.items():
                combination[label] = combination.get(label, self.field.zero) + c * weight
        return residual, {k: w for k, w in combination.items() if not w.is_zero()}

    def contains(self, vector: Sequence[CycloNum]) -> bool:
        residual, _ = self.reduce(vector)
        return all(x.is_zero() for x in residual)

    def insert(self, vector: Sequence[CycloNum], label: Optional[Hashable] = None) -> bool:
        """Add a vector; returns False (and changes nothing) if it is already in the span"""
        if len(vector) != self.dim:
            raise ValueError(f"vector has length {len(vector)}, expected {self.dim}")
        residual, combination = self.reduce(vector)
        pivot = next((j for j, x in enumerate(residual) if not x.is_zero()), None)
        if pivot is None:
            return False
        scale = residual[pivot].inverse()
        row = [x * scale for x in residual]
        combo = {k: -w * scale for k, w in combination.items()}
        if label is not None:
            combo[label] = combo.get(label, self.field.zero) + scale
        position = bisect_left(self._pivots, pivot)
        self._pivots.insert(position, pivot)
        self._rows.insert(position, row)
        self._supports.insert(position, [j for j, x in enumerate(row) if not x.is_zero()])
        self._combos.insert(position, {k: w for k, w in combo.items() if not w.is_zero()})
        return True

    def express(self, vector: Sequence[CycloNum]) -> Optional[Dict[Hashable, CycloNum]]:
        """Coordinates on the labeled vectors, or None if the vector is outside the span"""
        residual, combination = self.reduce(vector)
        if any(not x.is_zero() for x in residual):
            return None
        return combination
