"""The exact polynomial layer: master sextic, canonical curves, and their identities.

Everything here is exact arithmetic over Q via :class:`~pvi.multipoly.MultiPoly`:

* the parameter-weighted sextic whose nontrivial irreducible factors are the
  only candidate curves for smooth (zero-, one-, pole- and fixed-point-free)
  solutions;
* the seven canonical curves A..G and the reducibility surface (a quartic
  relation in the four parameters, with three distinguished lines);
* the degree-3 multiplication identity for the normalized elliptic
  coordinate w = (p - e1)/(e2 - e1), whose numerator/denominator
  factorizations produce the four quartic curves;
* rational uniformizations of the quartic curves and the S3/S4 symmetry
  substitutions permuting the curves;
* a specialization-based irreducibility certifier (never a general
  factorization algorithm).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Union

from .multipoly import MultiPoly, Scalar

Y = MultiPoly.variable("y")
T = MultiPoly.variable("t")
Z = MultiPoly.variable("z")
ONE = MultiPoly.constant(1)

AlphaLike = Sequence[Union[Scalar, Fraction]]


class CurveId(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"

    def __str__(self) -> str:
        return self.value


CURVES: dict[CurveId, MultiPoly] = {
    CurveId.A: MultiPoly.parse("y^2 - t"),
    CurveId.B: MultiPoly.parse("y^2 - 2*y + t"),
    CurveId.C: MultiPoly.parse("y^2 - 2*y*t + t"),
    CurveId.D: MultiPoly.parse("3*y^4 - 4*y^3*t - 4*y^3 + 6*y^2*t - t^2"),
    CurveId.E: MultiPoly.parse("y^4 - 6*y^2*t + 4*y*t^2 + 4*y*t - 3*t^2"),
    CurveId.F: MultiPoly.parse("y^4 - 4*y^3 + 6*y^2*t - 4*y*t^2 + t^2"),
    CurveId.G: MultiPoly.parse("y^4 - 4*y^3*t + 6*y^2*t - 4*y*t + t^2"),
}

QUARTIC_CURVES = (CurveId.D, CurveId.E, CurveId.F, CurveId.G)


def master_poly(alpha: AlphaLike) -> MultiPoly:
    """Parameter-weighted sextic in (y, t); linear in the four parameters.

    a0*y^2*(y-1)^2*(y-t)^2 - a1*t*(y-1)^2*(y-t)^2
    - a2*(1-t)*y^2*(y-t)^2 - a3*t*(t-1)*y^2*(y-1)^2
    """
    a0, a1, a2, a3 = (Fraction(a) for a in alpha)
    y2 = Y ** 2
    ym1 = (Y - 1) ** 2
    ymt = (Y - T) ** 2
    return (
        a0 * y2 * ym1 * ymt
        - a1 * T * ym1 * ymt
        - a2 * (1 - T) * y2 * ymt
        - a3 * T * (T - 1) * y2 * ym1
    )


def p0_poly(alpha: AlphaLike) -> MultiPoly:
    """Quartic cofactor of (y - t)^2 in the sextic when the fourth parameter vanishes."""
    a0, a1, a2 = (Fraction(a) for a in alpha[:3])
    return a0 * (Y - 1) ** 2 * Y ** 2 - a2 * Y ** 2 - T * (a1 * (Y - 1) ** 2 - a2 * Y ** 2)


# ----------------------------------------------------------------------
# reducibility surface
# ----------------------------------------------------------------------

LINES = ("L1", "L2", "L3")
_LINE_PAIRINGS = {"L1": ((0, 1), (2, 3)), "L2": ((0, 2), (1, 3)), "L3": ((0, 3), (1, 2))}


def kummer_defect(alpha: AlphaLike) -> Fraction:
    """LHS - RHS of the quartic surface relation, exactly."""
    a = [Fraction(x) for x in alpha]
    sym2 = sum(a[i] * a[j] for i in range(4) for j in range(i + 1, 4))
    lhs = (sum(x * x for x in a) - 2 * sym2) ** 2
    rhs = 64 * a[0] * a[1] * a[2] * a[3]
    return lhs - rhs


def kummer_condition(alpha: AlphaLike) -> tuple[bool, Fraction]:
    """(holds, defect): whether the four parameters lie on the reducibility surface."""
    defect = kummer_defect(alpha)
    return defect == 0, defect


def kummer_defect_poly() -> MultiPoly:
    """The defect as a polynomial in the parameter variables a0..a3."""
    a = [MultiPoly.variable(f"a{i}") for i in range(4)]
    sym2 = MultiPoly.zero()
    for i in range(4):
        for j in range(i + 1, 4):
            sym2 = sym2 + a[i] * a[j]
    lhs = (a[0] ** 2 + a[1] ** 2 + a[2] ** 2 + a[3] ** 2 - 2 * sym2) ** 2
    return lhs - 64 * a[0] * a[1] * a[2] * a[3]


def signed_sum_product() -> MultiPoly:
    """Product of (u0 + e1*u1 + e2*u2 + e3*u3) over the 8 sign patterns."""
    u = [MultiPoly.variable(f"u{i}") for i in range(4)]
    out = ONE
    for s1, s2, s3 in product((1, -1), repeat=3):
        out = out * (u[0] + s1 * u[1] + s2 * u[2] + s3 * u[3])
    return out


def verify_kummer_equivalence() -> bool:
    """Exact ring identity: the 8-fold signed product equals the defect at a_j = u_j^2."""
    subs = {f"a{i}": MultiPoly.variable(f"u{i}") ** 2 for i in range(4)}
    return signed_sum_product() == kummer_defect_poly().subs(**subs)


def line_membership(alpha: AlphaLike) -> set[str]:
    """Which of the three distinguished lines of the surface contain alpha."""
    a = [Fraction(x) for x in alpha]
    out = set()
    for name, ((i, j), (k, l)) in _LINE_PAIRINGS.items():
        if a[i] == a[j] and a[k] == a[l]:
            out.add(name)
    return out


# ----------------------------------------------------------------------
# tripling identity and the quartic curves
# ----------------------------------------------------------------------

TRIPLING_F = MultiPoly.parse("y^4 + 4*y*t - 6*y^2*t - 3*t^2 + 4*y*t^2")
TRIPLING_G = MultiPoly.parse("4*y^3*t - 6*y^2*t + 4*y^3 - 3*y^4 + t^2")


def derive_quartics() -> dict[CurveId, MultiPoly]:
    """Recover the four quartic curves from the tripling identity w(3z) = y*(f/g)^2.

    w(3z) = infinity on the zero set of g, w(3z) = 0 on that of f (y itself
    never vanishes for the classes of interest), and the value-1 and value-t
    loci y*f^2 - g^2 and y*f^2 - t*g^2 carry the factors (y - 1) and (y - t)
    times perfect squares whose roots are the remaining two quartics.
    """
    f, g = TRIPLING_F, TRIPLING_G
    d = (-g).sign_normalized()
    e = f.sign_normalized()
    fcurve = (f * f * Y - g * g).exact_div(Y - 1).square_root()
    gcurve = (f * f * Y - T * g * g).exact_div(Y - T).square_root()
    return {CurveId.D: d, CurveId.E: e, CurveId.F: fcurve, CurveId.G: gcurve}


# ----------------------------------------------------------------------
# rational substitutions: uniformizations and curve symmetries
# ----------------------------------------------------------------------

RationalMap = dict[str, tuple[MultiPoly, MultiPoly]]

UNIFORMIZATIONS: dict[CurveId, RationalMap] = {
    CurveId.D: {
        "y": (ONE, 1 - Z ** 2),
        "t": (2 * Z - 1, (Z - 1) ** 3 * (Z + 1)),
    },
    CurveId.E: {
        "y": (1 - Z ** 2, ONE),
        "t": ((Z + 1) * (Z - 1) ** 3, 2 * Z - 1),
    },
    CurveId.F: {
        "y": (Z ** 2, ONE),
        "t": (-(Z ** 3) * (Z - 2), 2 * Z - 1),
    },
    CurveId.G: {
        "y": (-(2 * Z - 1), Z * (Z - 2)),
        "t": (-(2 * Z - 1), Z ** 3 * (Z - 2)),
    },
}


def substitute_rational(p: MultiPoly, mapping: RationalMap) -> MultiPoly:
    """Numerator of p after substituting var -> num/den, denominators cleared.

    Each substituted variable v of maximal degree d contributes den_v^d; the
    result is the exact numerator polynomial (no content stripping).
    """
    degs = {v: p.degree_in(v) for v in mapping}
    result = MultiPoly.zero()
    for exps, coef in p.terms.items():
        term = MultiPoly.constant(coef)
        for var, e in zip(p.vars, exps):
            if var in mapping:
                num, den = mapping[var]
                term = term * num ** e * den ** (degs[var] - e)
            elif e:
                term = term * MultiPoly.variable(var) ** e
        result = result + term
    return result


def verify_uniformization(curve: CurveId) -> bool:
    """Exact check that the rational parametrization annihilates the curve."""
    if curve not in UNIFORMIZATIONS:
        raise ValueError(f"no uniformization recorded for curve {curve}")
    return substitute_rational(CURVES[curve], UNIFORMIZATIONS[curve]).is_zero()


SYMMETRY_GENERATORS: dict[str, RationalMap] = {
    # (t, y) -> (1 - t, 1 - y)
    "s1": {"t": (1 - T, ONE), "y": (1 - Y, ONE)},
    # (t, y) -> (1/t, y/t)
    "s2": {"t": (ONE, T), "y": (Y, T)},
    # (t, y) -> (1/t, 1/y)
    "s3": {"t": (ONE, T), "y": (ONE, Y)},
}


def apply_symmetry(p: MultiPoly, word: Union[str, Iterable[str]]) -> MultiPoly:
    """Apply a word in the symmetry generators s1, s2, s3 to a curve polynomial.

    After each substitution the denominators are cleared by the minimal
    monomial and the sign is normalized; the identity word returns p
    (normalized) unchanged.
    """
    if isinstance(word, str):
        word = [w for w in word.replace("*", " ").split() if w]
    result = p
    for gen in word:
        if gen not in SYMMETRY_GENERATORS:
            raise ValueError(f"unknown symmetry generator {gen!r}; use s1, s2, s3")
        result = substitute_rational(result, SYMMETRY_GENERATORS[gen])
        result = result.strip_monomial_content().sign_normalized()
    return result.sign_normalized()


def identify_curve(p: MultiPoly) -> CurveId | None:
    """Match a polynomial against the canonical curves up to sign."""
    q = p.sign_normalized()
    for cid, poly in CURVES.items():
        if q == poly:
            return cid
    return None


# ----------------------------------------------------------------------
# irreducibility certification
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class IrreducibilityResult:
    """Outcome of the certifier: status in {'irreducible', 'reducible', 'unknown'}.

    ``witness`` is an exact proper factor (reducible case); ``certificate``
    is the pair (t0, p) whose specialization stayed degree-preserving and
    irreducible over the prime field (irreducible case).
    """

    status: str
    witness: MultiPoly | None = None
    certificate: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.status == "irreducible"


_TRIAL_FACTORS = (
    Y, T, Y - 1, T - 1, Y - T, Y + 1, Y + T,
    *CURVES.values(),
)
_SPECIALIZATION_POINTS = (2, 3, 5, 1, -1, 4, 7, 6, -2, 9)
_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
           73, 79, 83, 89, 97, 3, 2)
_FP_ENUMERATION_CAP = 50000


def is_irreducible(p: MultiPoly) -> IrreducibilityResult:
    """Certificate-based irreducibility over Q for a polynomial in (y, t).

    Returns 'reducible' only with an exact factor witness (trial division
    against low-degree candidates, content and perfect-square extraction);
    'irreducible' only with a specialization certificate (some integer t0 and
    prime p at which the image keeps its y-degree and is irreducible over
    the p-element field, exhaustively checked); 'unknown' otherwise.
    """
    if p.is_zero():
        raise ValueError("irreducibility of the zero polynomial is undefined")
    if not set(p.vars) <= {"y", "t"}:
        raise ValueError(f"certifier handles polynomials in (y, t) only, got {p.vars}")
    degy = p.degree_in("y")
    if degy > 6:
        raise ValueError(f"y-degree {degy} exceeds the supported bound 6")

    mono = p.monomial_content()
    if any(mono):
        name = p.vars[next(i for i, e in enumerate(mono) if e)]
        witness = MultiPoly.variable(name)
        if p.exact_div(witness).total_degree() >= 1:
            return IrreducibilityResult("reducible", witness=witness)

    if degy:
        content = p.content_in("y")
        if not content.is_constant():
            return IrreducibilityResult("reducible", witness=content)

    total = p.total_degree()
    for factor in _TRIAL_FACTORS:
        if 0 < factor.total_degree() < total:
            q = p.try_divide(factor)
            if q is not None and q.total_degree() >= 1:
                return IrreducibilityResult("reducible", witness=factor)

    if total >= 2:
        try:
            root = p.square_root()
            return IrreducibilityResult("reducible", witness=root)
        except ArithmeticError:
            pass

    if degy == 0:
        return IrreducibilityResult("unknown")

    lead = p.coefficients_in("y")[degy]
    for t0 in _SPECIALIZATION_POINTS:
        lead_val = lead(t=Fraction(t0)) if not lead.is_constant() else lead.constant_value()
        if lead_val == 0:
            continue
        for prime in _PRIMES:
            if prime ** (degy // 2) > _FP_ENUMERATION_CAP:
                continue
            coeffs = _specialize_mod(p, t0, prime)
            if coeffs is None or len(coeffs) - 1 != degy:
                continue
            if _fp_is_irreducible(coeffs, prime):
                return IrreducibilityResult("irreducible", certificate=(t0, prime))
    return IrreducibilityResult("unknown")


def _specialize_mod(p: MultiPoly, t0: int, prime: int) -> list[int] | None:
    """Dense coefficients (ascending) of p(y, t0) mod prime, or None when unusable."""
    coeffs = [0] * (p.degree_in("y") + 1)
    for d, c in p.coefficients_in("y").items():
        val = c(t=Fraction(t0)) if not c.is_constant() else c.constant_value()
        if val.denominator % prime == 0:
            return None
        coeffs[d] = (val.numerator * pow(val.denominator, -1, prime)) % prime
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs or None


def _fp_mod(num: list[int], den: list[int], prime: int) -> list[int]:
    num = num[:]
    inv = pow(den[-1], -1, prime)
    while len(num) >= len(den):
        c = (num[-1] * inv) % prime
        shift = len(num) - len(den)
        for i, dc in enumerate(den):
            num[shift + i] = (num[shift + i] - c * dc) % prime
        while num and num[-1] == 0:
            num.pop()
        if not num:
            break
    return num


def _fp_is_irreducible(coeffs: list[int], prime: int) -> bool:
    """Exhaustive trial division of a univariate polynomial over F_p."""
    deg = len(coeffs) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for lower in product(range(prime), repeat=d):
            divisor = list(lower) + [1]
            if not _fp_mod(coeffs, divisor, prime):
                return False
    return True
