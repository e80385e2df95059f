"""
Exact algebra over the rationals.

Multivariate polynomials keyed by exponent tuples, linear forms normalized to
primitive integer vectors, rational functions whose denominators are products
of linear forms, univariate polynomials for characteristic polynomials, and
fraction-free elimination for kernels and ranks.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from coxma.errors import NonLinearDenominatorError, PolynomialParseError

Rational = Fraction
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

ALIASES = ("x", "y", "z", "w")


def variable_names(nvars: int) -> Tuple[str, ...]:
    """x, y, z, w for up to four variables, x1..xn beyond."""
    if nvars <= len(ALIASES):
        return ALIASES[:nvars]
    return tuple(f"x{i + 1}" for i in range(nvars))


def grlex_key(exps: Monomial) -> Tuple[int, Monomial]:
    return (sum(exps), exps)


def monomials(nvars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of the given total degree, descending grlex."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class MultiPoly:
    """Polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.nvars = nvars
        clean: Dict[Monomial, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not match {nvars} variables")
            c = Fraction(coeff)
            if c:
                clean[tuple(exps)] = c
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def linear(cls, coefficients: Sequence[Scalar]) -> "MultiPoly":
        n = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            exps = [0] * n
            exps[i] = 1
            terms[tuple(exps)] = c
        return cls(n, terms)

    # -- inspection ---------------------------------------------------------
    def items(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def coefficient(self, exps: Monomial) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading(self) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._terms, key=grlex_key)
        return exps, self._terms[exps]

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: Scalar) -> "MultiPoly":
        factor = Fraction(factor)
        if not factor:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = MultiPoly.one(self.nvars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------
    def partial(self, index: int) -> "MultiPoly":
        terms = {}
        for e, c in self._terms.items():
            k = e[index]
            if k:
                terms[e[:index] + (k - 1,) + e[index + 1:]] = c * k
        return MultiPoly(self.nvars, terms)

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute x_i -> images[i]; all images share one ring."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power_of(i: int, k: int) -> MultiPoly:
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        result = MultiPoly.zero(target)
        for e, c in self._terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power_of(i, k)
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            value = c
            for v, k in zip(point, e):
                if k:
                    value *= Fraction(v) ** k
            total += value
        return total

    # -- text ---------------------------------------------------------------
    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        names = tuple(names) if names else variable_names(self.nvars)
        if not self._terms:
            return "0"
        pieces = []
        for exps, coeff in self.items():
            factors = []
            for name, k in zip(names, exps):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            magnitude = abs(coeff)
            if not factors:
                body = _format_coefficient(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = _format_coefficient(magnitude) + "*" + "*".join(factors)
            if not pieces:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_string()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int, names: Optional[Sequence[str]] = None) -> "MultiPoly":
        return _PolyParser(text, nvars, names).parse()


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _PolyParser:
    """Recursive-descent parser for strings such as ``4*x^3*y - (x - y)^2/2``."""

    def __init__(self, text: str, nvars: int, names: Optional[Sequence[str]]):
        self.text = text
        self.nvars = nvars
        lookup = {name: i for i, name in enumerate(variable_names(nvars))}
        lookup.update({f"x{i + 1}": i for i in range(nvars)})
        if names:
            lookup.update({name: i for i, name in enumerate(names)})
        self.lookup = lookup
        self.tokens = []
        for number, name, other in _TOKEN.findall(text):
            if number:
                self.tokens.append(("num", int(number)))
            elif name:
                self.tokens.append(("name", name))
            elif other.strip():
                self.tokens.append(("op", other))
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self, kind=None, value=None):
        token = self._peek()
        if token[0] is None or (kind and token[0] != kind) or (value and token[1] != value):
            raise PolynomialParseError(f"unexpected token {token[1]!r} in {self.text!r}")
        self.pos += 1
        return token

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise PolynomialParseError("empty polynomial string")
        result = self._expression()
        if self.pos != len(self.tokens):
            raise PolynomialParseError(f"trailing input in {self.text!r}")
        return result

    def _expression(self) -> MultiPoly:
        sign = 1
        if self._peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self._take()[1] == "-" else 1
        result = self._term().scale(sign)
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            term = self._term()
            result = result + term if op == "+" else result - term
        return result

    def _term(self) -> MultiPoly:
        result = self._factor()
        while self._peek() in (("op", "*"), ("op", "/")):
            op = self._take()[1]
            if op == "*":
                result = result * self._factor()
            else:
                divisor = self._take("num")[1]
                if divisor == 0:
                    raise PolynomialParseError("division by zero")
                result = result.scale(Fraction(1, divisor))
        return result

    def _factor(self) -> MultiPoly:
        kind, value = self._peek()
        if kind == "num":
            self._take()
            base = MultiPoly.constant(self.nvars, value)
        elif kind == "name":
            self._take()
            if value not in self.lookup:
                raise PolynomialParseError(f"unknown variable {value!r}")
            base = MultiPoly.variable(self.nvars, self.lookup[value])
        elif (kind, value) == ("op", "("):
            self._take()
            base = self._expression()
            self._take("op", ")")
        else:
            raise PolynomialParseError(f"unexpected token {value!r} in {self.text!r}")
        if self._peek() == ("op", "^"):
            self._take()
            base = base ** self._take("num")[1]
        return base


class LinearForm:
    """Primitive integer vector whose first nonzero entry is positive."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Scalar]):
        values = [Fraction(c) for c in coefficients]
        if not any(values):
            raise ValueError("a linear form needs a nonzero coefficient")
        lcm = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in values), 1)
        ints = [int(v * lcm) for v in values]
        g = reduce(gcd, (abs(v) for v in ints))
        ints = [v // g for v in ints]
        if next(v for v in ints if v) < 0:
            ints = [-v for v in ints]
        self.coefficients: Tuple[int, ...] = tuple(ints)

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    @property
    def pivot(self) -> int:
        return next(i for i, v in enumerate(self.coefficients) if v)

    def to_poly(self) -> MultiPoly:
        return MultiPoly.linear(self.coefficients)

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __lt__(self, other: "LinearForm"):
        return self.coefficients < other.coefficients

    def __str__(self):
        return self.to_poly().to_string()

    def __repr__(self):
        return f"LinearForm({list(self.coefficients)})"


def divide_by_linear(p: MultiPoly, form: LinearForm) -> Optional[MultiPoly]:
    """Exact quotient p / form, or None when form does not divide p."""
    a = form.coefficients
    j = form.pivot
    aj = a[j]
    rem = dict(p._terms)
    quotient: Dict[Monomial, Fraction] = {}
    while rem:
        exps = max(rem, key=lambda e: (e[j], grlex_key(e)))
        if exps[j] == 0:
            return None
        c = rem[exps] / aj
        q_exps = exps[:j] + (exps[j] - 1,) + exps[j + 1:]
        quotient[q_exps] = quotient.get(q_exps, 0) + c
        for i, ai in enumerate(a):
            if not ai:
                continue
            t = q_exps[:i] + (q_exps[i] + 1,) + q_exps[i + 1:]
            value = rem.get(t, 0) - c * ai
            if value:
                rem[t] = value
            else:
                rem.pop(t, None)
    return MultiPoly(p.nvars, quotient)


def divide_by_linear_power(p: MultiPoly, form: LinearForm, k: int) -> Optional[MultiPoly]:
    """q with p = form^k * q, or None."""
    if k < 1:
        raise ValueError("k must be positive")
    for _ in range(k):
        p = divide_by_linear(p, form)
        if p is None:
            return None
    return p


def linear_multiplicity(p: MultiPoly, form: LinearForm) -> int:
    """Largest k with form^k dividing the nonzero polynomial p."""
    if p.is_zero():
        raise ValueError("zero is divisible by every power")
    k = 0
    while True:
        q = divide_by_linear(p, form)
        if q is None:
            return k
        p, k = q, k + 1


def factor_over_forms(p: MultiPoly, forms: Iterable[LinearForm]) -> Tuple[Fraction, Dict[LinearForm, int]]:
    """Write p = c * prod(form^e); fail if anything non-linear is left over."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    exponents: Dict[LinearForm, int] = {}
    for form in forms:
        while True:
            q = divide_by_linear(p, form)
            if q is None:
                break
            p = q
            exponents[form] = exponents.get(form, 0) + 1
    if not p.is_constant():
        raise NonLinearDenominatorError(f"factor {p} is not a product of arrangement forms")
    return p.constant_value(), exponents


class FactoredRationalFunction:
    """scalar * numerator / prod(form^e) with linear-form denominators."""

    __slots__ = ("numerator", "denominator", "scalar", "_normal")

    def __init__(
        self,
        numerator: MultiPoly,
        denominator: Optional[Mapping[LinearForm, int]] = None,
        scalar: Scalar = 1,
        _normal: bool = False,
    ):
        self.numerator = numerator
        den = {f: e for f, e in (denominator or {}).items() if e}
        if any(e < 0 for e in den.values()):
            raise ValueError("denominator exponents must be positive")
        self.denominator: Tuple[Tuple[LinearForm, int], ...] = tuple(sorted(den.items()))
        self.scalar = Fraction(scalar)
        self._normal = _normal

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @classmethod
    def zero(cls, nvars: int) -> "FactoredRationalFunction":
        return cls(MultiPoly.zero(nvars), None, 0, _normal=True)

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "FactoredRationalFunction":
        return cls(p).normalize()

    @classmethod
    def reciprocal(cls, p: MultiPoly, forms: Iterable[LinearForm]) -> "FactoredRationalFunction":
        """1/p for a product of the given forms."""
        c, exponents = factor_over_forms(p, forms)
        return cls(MultiPoly.one(p.nvars), exponents, 1 / c, _normal=True)

    def den_dict(self) -> Dict[LinearForm, int]:
        return dict(self.denominator)

    def exponent_of(self, form: LinearForm) -> int:
        return self.den_dict().get(form, 0)

    def is_zero(self) -> bool:
        return self.numerator.is_zero() or not self.scalar

    def normalize(self) -> "FactoredRationalFunction":
        if self._normal:
            return self
        if self.is_zero():
            return FactoredRationalFunction.zero(self.nvars)
        num = self.numerator
        den = {}
        for form, e in self.denominator:
            while e:
                q = divide_by_linear(num, form)
                if q is None:
                    break
                num, e = q, e - 1
            if e:
                den[form] = e
        _, lead = num.leading()
        return FactoredRationalFunction(num.scale(1 / lead), den, self.scalar * lead, _normal=True)

    # -- predicates ---------------------------------------------------------
    def is_polynomial(self) -> bool:
        return not self.normalize().denominator

    def to_poly(self) -> MultiPoly:
        f = self.normalize()
        if f.denominator:
            raise ValueError(f"{f} is not a polynomial")
        return f.numerator.scale(f.scalar)

    def denominator_degree(self) -> int:
        return sum(e for _, e in self.denominator)

    def degree(self) -> int:
        """Numerator degree minus denominator degree (nonzero values only)."""
        f = self.normalize()
        return f.numerator.degree() - f.denominator_degree()

    def is_homogeneous(self) -> bool:
        return self.normalize().numerator.is_homogeneous()

    def denominator_poly(self) -> MultiPoly:
        result = MultiPoly.one(self.nvars)
        for form, e in self.denominator:
            result = result * form.to_poly() ** e
        return result

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "FactoredRationalFunction":
        if isinstance(other, FactoredRationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return FactoredRationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return FactoredRationalFunction(MultiPoly.constant(self.nvars, other))
        return NotImplemented

    def _lift(self, target: Mapping[LinearForm, int]) -> MultiPoly:
        """Numerator rewritten over the common denominator ``target``."""
        own = self.den_dict()
        result = self.numerator.scale(self.scalar)
        for form, e in target.items():
            missing = e - own.get(form, 0)
            if missing:
                result = result * form.to_poly() ** missing
        return result

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self.normalize()
        if self.is_zero():
            return other.normalize()
        common = self.den_dict()
        for form, e in other.denominator:
            common[form] = max(common.get(form, 0), e)
        total = self._lift(common) + other._lift(common)
        return FactoredRationalFunction(total, common).normalize()

    __radd__ = __add__

    def __neg__(self):
        return FactoredRationalFunction(self.numerator, self.den_dict(), -self.scalar, self._normal)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return FactoredRationalFunction.zero(self.nvars)
        den = self.den_dict()
        for form, e in other.denominator:
            den[form] = den.get(form, 0) + e
        return FactoredRationalFunction(
            self.numerator * other.numerator, den, self.scalar * other.scalar
        ).normalize()

    __rmul__ = __mul__

    def divide_by_forms(self, exponents: Mapping[LinearForm, int]) -> "FactoredRationalFunction":
        den = self.den_dict()
        for form, e in exponents.items():
            den[form] = den.get(form, 0) + e
        return FactoredRationalFunction(self.numerator, den, self.scalar).normalize()

    def partial(self, index: int) -> "FactoredRationalFunction":
        """d/dx_index by the quotient rule over the factored denominator."""
        if self.is_zero():
            return self
        forms = [f for f, _ in self.denominator]
        n = self.numerator
        radical = MultiPoly.one(self.nvars)
        for f in forms:
            radical = radical * f.to_poly()
        top = n.partial(index) * radical
        for form, e in self.denominator:
            a = form.coefficients[index]
            if not a:
                continue
            others = MultiPoly.one(self.nvars)
            for f in forms:
                if f != form:
                    others = others * f.to_poly()
            top = top - n * others.scale(e * a)
        den = self.den_dict()
        for f in forms:
            den[f] += 1
        return FactoredRationalFunction(top, den, self.scalar).normalize()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, FactoredRationalFunction):
            return NotImplemented
        a, b = self.normalize(), other.normalize()
        return (a.numerator, a.denominator, a.scalar) == (b.numerator, b.denominator, b.scalar)

    def __hash__(self):
        f = self.normalize()
        return hash((f.numerator, f.denominator, f.scalar))

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        f = self.normalize()
        if f.is_zero():
            return "0"
        top = f.numerator.scale(f.scalar).to_string(names)
        if not f.denominator:
            return top
        parts = []
        for form, e in f.denominator:
            body = f"({form.to_poly().to_string(names)})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return f"({top})/({'*'.join(parts)})"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"FactoredRationalFunction({self.to_string()!r})"


def rf_normalize(f: FactoredRationalFunction) -> FactoredRationalFunction:
    return f.normalize()


def determinant(rows: Sequence[Sequence]):
    """Cofactor expansion; works for any ring elements with + - *."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j, entry in enumerate(rows[0]):
        if getattr(entry, "is_zero", lambda: entry == 0)():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = entry * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


def poly_det(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    rows = [list(r) for r in matrix]
    return determinant(rows)


class RatMatrix:
    """Dense matrix of rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Scalar]], cols: Optional[int] = None):
        self.entries: Tuple[Tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(v) for v in row) for row in entries
        )
        self.rows = len(self.entries)
        self.cols = cols if cols is not None else (len(self.entries[0]) if self.entries else 0)
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged matrix")

    def apply(self, vector: Sequence[Scalar]) -> Tuple[Fraction, ...]:
        return tuple(sum((a * Fraction(b) for a, b in zip(row, vector)), Fraction(0)) for row in self.entries)

    def integer_rows(self) -> List[List[int]]:
        out = []
        for row in self.entries:
            lcm = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in row), 1)
            out.append([int(v * lcm) for v in row])
        return out


def _primitive(row: List[int]) -> List[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def fraction_free_echelon(rows: List[List[int]], ncols: int, reduced: bool = True) -> Tuple[List[List[int]], List[int]]:
    """Integer row echelon form with primitive rows; Gauss-Jordan when reduced."""
    rows = [list(r) for r in rows if any(r)]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        pv = prow[c]
        targets = range(len(rows)) if reduced else range(r + 1, len(rows))
        for i in targets:
            if i == r:
                continue
            v = rows[i][c]
            if v:
                g = gcd(pv, v)
                a, b = pv // g, v // g
                rows[i] = _primitive([a * x - b * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def matrix_rank(m: RatMatrix) -> int:
    _, pivots = fraction_free_echelon(m.integer_rows(), m.cols, reduced=False)
    return len(pivots)


def kernel_basis(m: RatMatrix) -> List[Tuple[Fraction, ...]]:
    """Basis of {v : M v = 0}, one vector per free column."""
    rows, pivots = fraction_free_echelon(m.integer_rows(), m.cols, reduced=True)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for row, pc in zip(rows, pivots):
            if row[free]:
                v[pc] = Fraction(-row[free], row[pc])
        basis.append(tuple(v))
    return basis


class UniPoly:
    """Univariate polynomial, coefficients stored low degree first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Scalar] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coefficients: Tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def from_high_first(cls, coefficients: Sequence[Scalar]) -> "UniPoly":
        return cls(reversed(list(coefficients)))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "UniPoly":
        result = cls([1])
        for r in roots:
            result = result * cls([-Fraction(r), 1])
        return result

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else Fraction(0)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coefficients), len(other.coefficients))
        return UniPoly(self.coefficient(k) + other.coefficient(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coefficients)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coefficients or not other.coefficients:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        result = UniPoly([1])
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def evaluate(self, value: Scalar) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * value + c
        return total

    def compose_affine(self, a: Scalar, b: Scalar) -> "UniPoly":
        """p(a*t + b)."""
        inner = UniPoly([b, a])
        result = UniPoly()
        for c in reversed(self.coefficients):
            result = result * inner + c
        return result

    def deflate(self, root: Scalar) -> Tuple["UniPoly", Fraction]:
        """Synthetic division by (t - root): quotient and remainder."""
        if not self.coefficients:
            return UniPoly(), Fraction(0)
        carry = Fraction(0)
        quotient = []
        for c in reversed(self.coefficients):
            carry = carry * root + c
            quotient.append(carry)
        remainder = quotient.pop()
        return UniPoly(reversed(quotient)), remainder

    def to_int_list(self) -> List[int]:
        """Integer coefficients, highest degree first."""
        out = []
        for c in reversed(self.coefficients):
            if c.denominator != 1:
                raise ValueError(f"coefficient {c} is not an integer")
            out.append(c.numerator)
        return out or [0]

    def to_string(self, var: str = "t") -> str:
        if not self.coefficients:
            return "0"
        pieces = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mag = abs(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                body = _format_coefficient(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_format_coefficient(mag)}*{mono}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"UniPoly({self.to_string()!r})"
