"""Exact arithmetic on rational half-period vectors under the level-2 congruence group.

A solution label is a pair (mu, nu) of rationals taken modulo Z x Z and
modulo a global sign.  The group of integer matrices congruent to the
identity mod 2 acts on these classes by matrix-vector multiplication;
because the action preserves denominators, every orbit of a rational
class is finite and can be enumerated by breadth-first closure under a
generating set.

Conventions fixed here and relied on throughout the package:

* canonical representative: reduce both components into [0, 1), then take
  the lexicographic minimum of v and -v (so hashing and set membership
  are well defined);
* column-vector action A @ (mu, nu)^T followed by canonicalization;
* generators [[1, 2], [0, 1]] and [[1, 0], [2, 1]] (with -I absorbed by
  the sign quotient) and their inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Union

RationalLike = Union[Fraction, int, str]

# BFS on orbits is guarded by this cap on the class denominator; the action
# preserves denominators, so it bounds the orbit size, not the work per step.
MAX_ORBIT_DENOMINATOR = 1000


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational from a 'p/q' or integer string (q > 0 after reduction)."""
    s = text.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical 'p/q' string (plain integer when q == 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _coerce(x: RationalLike) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


@dataclass(frozen=True, order=True)
class RationalPair:
    """Canonical representative of a class (mu, nu) mod Z^2 and global sign.

    Both components lie in [0, 1); among the class representatives v and -v
    the lexicographically smaller is stored.  Construct via
    :func:`canonicalize` (the constructor does not normalize).
    """

    mu: Fraction
    nu: Fraction

    def __iter__(self):
        return iter((self.mu, self.nu))

    @property
    def denominator(self) -> int:
        """Least N with (mu, nu) in (1/N)Z^2; invariant under the group action."""
        return lcm(self.mu.denominator, self.nu.denominator)

    def is_zero(self) -> bool:
        return self.mu == 0 and self.nu == 0

    def is_half_integer(self) -> bool:
        """True when the class lies in (Z/2)^2, i.e. labels a trivial solution."""
        return self.mu.denominator <= 2 and self.nu.denominator <= 2

    def __str__(self) -> str:
        return f"({format_rational(self.mu)}, {format_rational(self.nu)})"

    def as_strings(self) -> list[str]:
        return [format_rational(self.mu), format_rational(self.nu)]

    @classmethod
    def from_strings(cls, mu: str, nu: str) -> "RationalPair":
        return canonicalize((parse_rational(mu), parse_rational(nu)))


def canonicalize(v: Iterable[RationalLike]) -> RationalPair:
    """Canonical representative of the class of v modulo Z^2 and sign.

    canonicalize(v) == canonicalize(-v) == canonicalize(v + k) for any
    integer vector k.
    """
    mu, nu = (_coerce(x) for x in v)
    plus = (mu % 1, nu % 1)
    minus = ((-mu) % 1, (-nu) % 1)
    return RationalPair(*min(plus, minus))


@dataclass(frozen=True)
class Gamma2Matrix:
    """Integer matrix [[a, b], [c, d]] with det 1 and a, d odd, b, c even."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant must be 1, got {self.a * self.d - self.b * self.c}")
        if self.a % 2 == 0 or self.d % 2 == 0 or self.b % 2 != 0 or self.c % 2 != 0:
            raise ValueError("matrix is not congruent to the identity mod 2")

    @classmethod
    def identity(cls) -> "Gamma2Matrix":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "Gamma2Matrix") -> "Gamma2Matrix":
        return Gamma2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Gamma2Matrix":
        return Gamma2Matrix(self.d, -self.b, -self.c, self.a)

    def moebius(self, tau: complex) -> complex:
        """Action on the upper half-plane, (a*tau + b) / (c*tau + d)."""
        return (self.a * tau + self.b) / (self.c * tau + self.d)


GEN_SHEAR_UPPER = Gamma2Matrix(1, 2, 0, 1)
GEN_SHEAR_LOWER = Gamma2Matrix(1, 0, 2, 1)
GENERATORS = (GEN_SHEAR_UPPER, GEN_SHEAR_LOWER)
_GENERATORS_AND_INVERSES = (
    GEN_SHEAR_UPPER,
    GEN_SHEAR_LOWER,
    GEN_SHEAR_UPPER.inverse(),
    GEN_SHEAR_LOWER.inverse(),
)


def act(matrix: Gamma2Matrix, v: RationalPair) -> RationalPair:
    """Column-vector action: canonicalize(matrix @ (mu, nu)^T)."""
    return canonicalize(
        (matrix.a * v.mu + matrix.b * v.nu, matrix.c * v.mu + matrix.d * v.nu)
    )


@dataclass(frozen=True)
class StandardForm:
    """Standard-form data of a nonzero class: mu = m*M/N, nu = n*M/N.

    N is the lcm of the reduced denominators of mu and nu, M the gcd of the
    lifted numerators (so gcd(M, N) = 1 and gcd(m, n) = 1), and ``standard``
    is the representative (0, M/N), (M/N, 0) or (M/N, M/N) selected by the
    parity of (m, n): (even, odd), (odd, even), (odd, odd) respectively.
    Every orbit contains its standard representative.
    """

    M: int
    N: int
    m: int
    n: int
    standard: RationalPair


def standard_form(v: RationalPair) -> StandardForm:
    """Reduce a nonzero class to its standard form; rejects the zero class."""
    if v.is_zero():
        raise ValueError("zero vector has no standard form")
    mu, nu = v.mu, v.nu
    N = lcm(mu.denominator, nu.denominator)
    M = gcd(mu.numerator * (N // mu.denominator), nu.numerator * (N // nu.denominator))
    m = mu.numerator * (N // mu.denominator) // M
    n = nu.numerator * (N // nu.denominator) // M
    frac = Fraction(M, N)
    if m % 2 == 0:
        standard = canonicalize((0, frac))
    elif n % 2 == 0:
        standard = canonicalize((frac, 0))
    else:
        standard = canonicalize((frac, frac))
    return StandardForm(M=M, N=N, m=m, n=n, standard=standard)


def merging_matrix(N: int) -> Gamma2Matrix:
    """The explicit matrix [[-N, N+1], [-1-N^2, 1+N(N+1)]] merging standard classes.

    Maps the class of (M/N, 0) to that of (0, M/N).  Only exists in the
    group for odd N: for even N the classes (M/N, 0), (0, M/N), (M/N, M/N)
    lie in three distinct orbits and no such matrix exists, so even N is
    rejected.
    """
    if N < 1 or N % 2 == 0:
        raise ValueError(f"merging matrix exists only for odd N >= 1, got {N}")
    return Gamma2Matrix(-N, N + 1, -1 - N * N, 1 + N * (N + 1))


def enumerate_orbit(v: RationalPair) -> frozenset[RationalPair]:
    """Full orbit of the class of v as canonical representatives.

    Breadth-first closure under the two generators and their inverses; the
    action preserves the class denominator, so the orbit is finite.
    """
    if v.denominator > MAX_ORBIT_DENOMINATOR:
        raise ValueError(
            f"denominator {v.denominator} exceeds the orbit enumeration cap "
            f"{MAX_ORBIT_DENOMINATOR}"
        )
    start = canonicalize(v)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for g in _GENERATORS_AND_INVERSES:
                img = act(g, w)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(seen)


def same_orbit(v1: RationalPair, v2: RationalPair) -> bool:
    """True when the classes of v1 and v2 lie in one orbit."""
    if v1.is_zero() or v2.is_zero():
        raise ValueError("orbit membership is defined for nonzero classes")
    return canonicalize(v2) in enumerate_orbit(v1)


def eligible_classes(N: int) -> list[RationalPair]:
    """All classes (m/N, n/N) whose numerator gcd is coprime to N, canonicalized."""
    out = set()
    for m in range(N):
        for n in range(N):
            if gcd(gcd(m, n), N) == 1:
                out.add(canonicalize((Fraction(m, N), Fraction(n, N))))
    return sorted(out)


def orbit_partition(N: int) -> list[int]:
    """Sorted orbit sizes partitioning all eligible classes of denominator level N."""
    if N < 2:
        raise ValueError("orbit partition is defined for N >= 2")
    remaining = set(eligible_classes(N))
    sizes = []
    while remaining:
        v = min(remaining)
        orbit = enumerate_orbit(v)
        if not orbit <= remaining:
            raise AssertionError("orbit escaped the eligible class set")
        remaining -= orbit
        sizes.append(len(orbit))
    return sorted(sizes)
