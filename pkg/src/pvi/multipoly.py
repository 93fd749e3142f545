"""Sparse multivariate polynomials with exact rational coefficients.

Variables are drawn from a fixed ordered universe (solution variable y,
independent variable t, uniformizing parameter z, four curve parameters
a0..a3 and their square roots u0..u3).  A polynomial stores only the
variables it actually uses, in universe order, so structurally equal
polynomials compare equal regardless of how they were built.

All arithmetic is exact over Q.  Monomials are ordered graded-lex
(total degree first, ties broken left-to-right in universe order), and
that ordering fixes leading terms, sign normalization, the canonical
text form and the JSON export.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence, Union

VARIABLES = ("y", "t", "z", "a0", "a1", "a2", "a3", "u0", "u1", "u2", "u3")
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}

Scalar = Union[Fraction, int]
Exponents = tuple[int, ...]


class ExactDivisionError(ArithmeticError):
    """Raised when a polynomial division that must be exact leaves a remainder."""


class NotAPerfectSquareError(ArithmeticError):
    """Raised when a polynomial square root is requested of a non-square."""


def _grlex_key(exps: Exponents) -> tuple:
    return (sum(exps), exps)


def _check_vars(names: Sequence[str]) -> tuple[str, ...]:
    names = tuple(names)
    idx = -1
    for name in names:
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}; allowed: {VARIABLES}")
        if _VAR_INDEX[name] <= idx:
            raise ValueError(f"variables must be distinct and in universe order, got {names}")
        idx = _VAR_INDEX[name]
    return names


class MultiPoly:
    """Immutable sparse polynomial: map from exponent tuples to nonzero Fractions."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[Exponents, Scalar] = (), variables: Sequence[str] = ()):
        names = _check_vars(variables)
        clean: dict[Exponents, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coef in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(names):
                raise ValueError(f"exponent tuple {exps} does not match variables {names}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coef = Fraction(coef)
            if coef:
                c = clean.get(exps, Fraction(0)) + coef
                if c:
                    clean[exps] = c
                elif exps in clean:
                    del clean[exps]
        # drop variables that no surviving term uses
        if clean and names:
            used = [i for i in range(len(names)) if any(e[i] for e in clean)]
            if len(used) != len(names):
                names = tuple(names[i] for i in used)
                clean = {tuple(e[i] for i in used): c for e, c in clean.items()}
        elif not clean:
            names = ()
        object.__setattr__(self, "vars", names)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> "MultiPoly":
        c = Fraction(c)
        return cls({(): c} if c else {}, ())

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls({(1,): Fraction(1)}, (name,))

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    # ------------------------------------------------------------------
    # basic structure
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        if self.vars:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading_term(self) -> tuple[Exponents, Fraction]:
        """Graded-lex leading (exponents, coefficient); exponents over self.vars."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    @staticmethod
    def _aligned(p: "MultiPoly", q: "MultiPoly"):
        if p.vars == q.vars:
            return p.vars, p.terms, q.terms
        names = tuple(sorted(set(p.vars) | set(q.vars), key=_VAR_INDEX.__getitem__))
        pmap = [names.index(v) for v in p.vars]
        qmap = [names.index(v) for v in q.vars]
        width = len(names)

        def lift(terms, colmap):
            out = {}
            for exps, coef in terms.items():
                row = [0] * width
                for pos, e in zip(colmap, exps):
                    row[pos] = e
                out[tuple(row)] = coef
            return out

        return names, lift(p.terms, pmap), lift(q.terms, qmap)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other)
        return NotImplemented

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, a, b = self._aligned(self, other)
        out = dict(a)
        for exps, coef in b.items():
            out[exps] = out.get(exps, Fraction(0)) + coef
        return MultiPoly(out, names)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return -(self - other)

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, a, b = self._aligned(self, other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MultiPoly(out, names)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, name: str) -> "MultiPoly":
        if name not in self.vars:
            return MultiPoly.zero()
        i = self.vars.index(name)
        out = {}
        for exps, coef in self.terms.items():
            if exps[i]:
                key = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
                out[key] = out.get(key, Fraction(0)) + coef * exps[i]
        return MultiPoly(out, self.vars)

    # ------------------------------------------------------------------
    # substitution and evaluation
    # ------------------------------------------------------------------

    def __call__(self, **values):
        """Numeric evaluation; every variable of the polynomial must be bound.

        Returns a Fraction when all inputs are exact rationals, otherwise
        a complex/float following Python numeric promotion.
        """
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"unbound variables {missing}")
        if not self.terms:
            return Fraction(0)
        pows: list[dict[int, object]] = [{0: 1} for _ in self.vars]
        base = [values[v] for v in self.vars]
        total = None
        for exps, coef in self.terms.items():
            term = coef
            for i, e in enumerate(exps):
                if e:
                    cache = pows[i]
                    if e not in cache:
                        cache[e] = base[i] ** e
                    term = term * cache[e]
            total = term if total is None else total + term
        return total

    def subs(self, **mapping: "MultiPoly | Scalar") -> "MultiPoly":
        """Polynomial substitution for a subset of variables (exact)."""
        for name in mapping:
            _check_vars((name,))
        result = MultiPoly.zero()
        for exps, coef in self.terms.items():
            term = MultiPoly.constant(coef)
            for var, e in zip(self.vars, exps):
                if not e:
                    continue
                if var in mapping:
                    repl = mapping[var]
                    if not isinstance(repl, MultiPoly):
                        repl = MultiPoly.constant(repl)
                    term = term * repl ** e
                else:
                    term = term * MultiPoly({(e,): Fraction(1)}, (var,))
            result = result + term
        return result

    # ------------------------------------------------------------------
    # division and square root
    # ------------------------------------------------------------------

    def try_divide(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Exact quotient self / divisor, or None when division is not exact.

        Single-divisor reduction in graded-lex order; for an exact division
        the leading term of the running remainder is always reducible, so a
        non-divisible leading term proves inexactness.
        """
        if not isinstance(divisor, MultiPoly) or divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        names, rem, div = self._aligned(self, divisor)
        lead = max(div, key=_grlex_key) if div else ()
        lead_coef = div[lead]
        quot: dict[Exponents, Fraction] = {}
        rem = dict(rem)
        while rem:
            exps = max(rem, key=_grlex_key)
            delta = tuple(a - b for a, b in zip(exps, lead))
            if any(d < 0 for d in delta):
                return None
            c = rem[exps] / lead_coef
            quot[delta] = quot.get(delta, Fraction(0)) + c
            for de, dc in div.items():
                key = tuple(a + b for a, b in zip(delta, de))
                val = rem.get(key, Fraction(0)) - c * dc
                if val:
                    rem[key] = val
                elif key in rem:
                    del rem[key]
        return MultiPoly(quot, names)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        q = self.try_divide(divisor)
        if q is None:
            raise ExactDivisionError(f"{divisor} does not divide exactly")
        return q

    def divides(self, other: "MultiPoly") -> bool:
        return other.try_divide(self) is not None

    def coefficients_in(self, name: str) -> dict[int, "MultiPoly"]:
        """Coefficients of powers of one variable, as polynomials in the rest."""
        if name not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict[Exponents, Fraction]] = {}
        for exps, coef in self.terms.items():
            key = exps[:i] + exps[i + 1:]
            buckets.setdefault(exps[i], {})[key] = coef
        return {d: MultiPoly(t, rest) for d, t in buckets.items()}

    def content_in(self, name: str) -> "MultiPoly":
        """Gcd of the coefficient polynomials of powers of ``name``.

        Exact when the coefficients involve at most one other variable
        (univariate Euclid over Q, made monic); a unit content is reported
        as the constant 1.
        """
        coeffs = list(self.coefficients_in(name).values())
        if not coeffs:
            return MultiPoly.zero()
        if any(c.is_constant() and c for c in coeffs):
            return MultiPoly.constant(1)
        others = {v for c in coeffs for v in c.vars}
        if len(others) > 1:
            raise ValueError("content computation supports at most one coefficient variable")
        if not others:
            return MultiPoly.constant(1)
        var = others.pop()
        g = coeffs[0]
        for c in coeffs[1:]:
            g = _univariate_gcd(g, c, var)
            if g.is_constant():
                return MultiPoly.constant(1)
        return g

    def square_root(self) -> "MultiPoly":
        """Exact Q with Q*Q == self, sign-normalized to a positive leading coefficient.

        Coefficient matching in the leading variable, recursing on the
        remaining variables for the top coefficient; the candidate is
        verified by squaring, so a wrong intermediate guess cannot survive.
        """
        if self.is_zero():
            return self
        if self.is_constant():
            return MultiPoly.constant(_fraction_sqrt(self.constant_value()))
        name = self.vars[0]
        coeffs = self.coefficients_in(name)
        deg = max(coeffs)
        if deg % 2:
            raise NotAPerfectSquareError(f"odd degree {deg} in {name}")
        half = deg // 2
        top = coeffs[deg].square_root()
        q: dict[int, MultiPoly] = {half: top}
        two_top = top * 2
        for j in range(1, half + 1):
            acc = coeffs.get(deg - j, MultiPoly.zero())
            for i in range(1, j):
                if half - i in q and half - j + i in q:
                    acc = acc - q[half - i] * q[half - j + i]
            quotient = acc.try_divide(two_top)
            if quotient is None:
                raise NotAPerfectSquareError("coefficient matching failed")
            if quotient:
                q[half - j] = quotient
        x = MultiPoly.variable(name)
        candidate = MultiPoly.zero()
        for d, c in q.items():
            candidate = candidate + c * x ** d
        if candidate * candidate != self:
            raise NotAPerfectSquareError(f"{self} is not a perfect square")
        _, lead = candidate.leading_term()
        return candidate if lead > 0 else -candidate

    def sign_normalized(self) -> "MultiPoly":
        """self or -self, whichever has a positive graded-lex leading coefficient."""
        if self.is_zero():
            return self
        _, lead = self.leading_term()
        return self if lead > 0 else -self

    def monomial_content(self) -> Exponents:
        """Componentwise minimum exponent vector over all terms (over self.vars)."""
        if not self.terms:
            return ()
        mins = None
        for exps in self.terms:
            mins = exps if mins is None else tuple(map(min, mins, exps))
        return mins

    def strip_monomial_content(self) -> "MultiPoly":
        """Divide out the largest monomial dividing every term."""
        mins = self.monomial_content()
        if not mins or not any(mins):
            return self
        return MultiPoly(
            {tuple(e - m for e, m in zip(exps, mins)): c for exps, c in self.terms.items()},
            self.vars,
        )

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coef in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exps) if e
            )
            mag = abs(coef)
            if mono:
                body = mono if mag == 1 else f"{_frac_str(mag)}*{mono}"
            else:
                body = _frac_str(mag)
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__

    def to_json_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exps": list(exps), "coef": _frac_str(coef)}
                for exps, coef in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultiPoly":
        return cls(
            {tuple(t["exps"]): Fraction(t["coef"]) for t in data["terms"]},
            tuple(data["vars"]),
        )

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Parse the canonical text form (sums of 'c*x^a*y^b' terms)."""
        return _parse_poly(text)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fraction_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise NotAPerfectSquareError(f"{x} is negative")
    pn, pd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn != x.numerator or pd * pd != x.denominator:
        raise NotAPerfectSquareError(f"{x} is not a square in Q")
    return Fraction(pn, pd)


def _univariate_gcd(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Monic gcd of two univariate polynomials over Q."""

    def to_list(f: MultiPoly) -> list[Fraction]:
        if f.is_zero():
            return []
        deg = f.degree_in(var)
        out = [Fraction(0)] * (deg + 1)
        for d, c in f.coefficients_in(var).items():
            out[d] = c.constant_value()
        return out

    def trim(c: list[Fraction]) -> list[Fraction]:
        while c and not c[-1]:
            c.pop()
        return c

    a, b = to_list(p), to_list(q)
    while b:
        # remainder of a mod b
        r = a[:]
        db, lb = len(b) - 1, b[-1]
        while len(r) - 1 >= db and trim(r):
            shift = len(r) - 1 - db
            c = r[-1] / lb
            for i, bc in enumerate(b):
                r[shift + i] -= c * bc
            trim(r)
        a, b = b, trim(r)
    if not a:
        return MultiPoly.zero()
    lead = a[-1]
    x = MultiPoly.variable(var)
    g = MultiPoly.zero()
    for d, c in enumerate(a):
        if c:
            g = g + MultiPoly.constant(c / lead) * x ** d
    return g


_TERM_RE = re.compile(r"\s*(?P<sign>[+-])?\s*(?P<body>[^+-]+)")
_FACTOR_RE = re.compile(r"^(?:(?P<num>-?\d+(?:/\d+)?)|(?P<var>[a-zA-Z]\w*)(?:\^(?P<exp>\d+))?)$")


def _parse_poly(text: str) -> MultiPoly:
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return MultiPoly.zero()
    result = MultiPoly.zero()
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or not m.group("body").strip():
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign = m.group("sign")
        if first and sign is None:
            sign = "+"
        elif not first and sign is None:
            raise ValueError(f"missing +/- separator near {s[pos:]!r}")
        first = False
        coef = Fraction(1 if sign == "+" else -1)
        term = MultiPoly.constant(1)
        for factor in m.group("body").split("*"):
            factor = factor.strip()
            fm = _FACTOR_RE.match(factor)
            if not fm:
                raise ValueError(f"bad factor {factor!r}")
            if fm.group("num") is not None:
                coef *= Fraction(fm.group("num"))
            else:
                e = int(fm.group("exp") or 1)
                term = term * MultiPoly.variable(fm.group("var")) ** e
        result = result + MultiPoly.constant(coef) * term
        pos = m.end()
    return result


def poly_square_root(p: MultiPoly) -> MultiPoly:
    """Module-level alias for :meth:`MultiPoly.square_root`."""
    return p.square_root()
