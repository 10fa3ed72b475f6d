"""Exact arithmetic in Z[i] on integer pairs: products, two-squares
decompositions, and factorization over fixed prime atoms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .numtheory import is_probable_prime

# Crossover between the exhaustive two-squares search and Hermite-Serret
# descent; below this the plain sweep is already fast.
TWO_SQUARES_SEARCH_LIMIT = 10**6


@dataclass(frozen=True, order=True)
class GaussInt:
    """Gaussian integer a + bi."""

    a: int
    b: int

    def __add__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.a, -self.b)

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def conj(self) -> "GaussInt":
        return GaussInt(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def as_tuple(self) -> tuple[int, int]:
        return (self.a, self.b)


UNITS = (GaussInt(1, 0), GaussInt(-1, 0), GaussInt(0, 1), GaussInt(0, -1))


def gmul(u: GaussInt, v: GaussInt) -> GaussInt:
    """Ring product (a,b)*(c,d) = (ac - bd, ad + bc)."""
    return u * v


def are_associates(u: GaussInt, v: GaussInt) -> bool:
    """True when u = unit * v for one of the four units."""
    return any(u == w * v for w in UNITS)


@dataclass(frozen=True)
class GaussFactorization:
    """A product expression unit * factors[0] * ... * factors[-1]."""

    unit: GaussInt
    factors: tuple[GaussInt, ...]

    def element(self) -> GaussInt:
        out = self.unit
        for f in self.factors:
            out = out * f
        return out


def two_squares_prime(p: int) -> tuple[int, int]:
    """Decompose a prime p = 2 or p = 1 (mod 4) as x^2 + y^2.

    Returns the canonical pair with 0 < x < y (x = y = 1 for p = 2).
    Primes p = 3 (mod 4) have no such decomposition and are rejected.
    """
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return (1, 1)
    if p % 4 == 3:
        raise ValueError(f"{p} = 3 (mod 4) is not a sum of two squares")
    if p < TWO_SQUARES_SEARCH_LIMIT:
        x = 1
        while 2 * x * x < p:
            rem = p - x * x
            y = math.isqrt(rem)
            if y * y == rem:
                return (x, y)
            x += 1
        raise RuntimeError(f"no decomposition found for {p}")  # unreachable for valid p
    return _two_squares_hermite_serret(p)


def _two_squares_hermite_serret(p: int) -> tuple[int, int]:
    # square root of -1 mod p from a quadratic nonresidue, then Euclid until
    # the remainder drops under sqrt(p)
    z = 0
    c = 2
    while True:
        z = pow(c, (p - 1) // 4, p)
        if (z * z + 1) % p == 0:
            break
        c += 1
    a, b = p, z
    while b * b > p:
        a, b = b, a % b
    x = b
    rem = p - x * x
    y = math.isqrt(rem)
    if y * y != rem:
        raise RuntimeError(f"descent failed for {p}")  # unreachable for prime input
    return (min(x, y), max(x, y))


_two_squares_cache: dict[int, tuple[int, int]] = {}


def _two_squares_cached(p: int) -> tuple[int, int]:
    got = _two_squares_cache.get(p)
    if got is None:
        got = _two_squares_cache[p] = two_squares_prime(p)
    return got


def representations(primes) -> set[GaussInt]:
    """All lattice points of squared length m = product of the given primes.

    The primes must be distinct and each 1 (mod 4).  The result has exactly
    2^(t+2) elements for t primes (the four units alone for the empty
    product), built as unit * prod_j (x_j +- i y_j) over all sign choices.
    """
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise ValueError(f"primes must be distinct, got {primes}")
    for p in primes:
        if p % 4 != 1 or not is_probable_prime(p):
            raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    t = len(primes)
    base = [_two_squares_cached(p) for p in primes]
    points: set[tuple[int, int]] = set()
    for signs in product((1, -1), repeat=t):
        a, b = 1, 0
        for (x, y), s in zip(base, signs):
            a, b = a * x - b * s * y, a * s * y + b * x
        points.update(((a, b), (-a, -b), (-b, a), (b, -a)))
    assert len(points) == 1 << (t + 2), (primes, len(points))
    return {GaussInt(a, b) for a, b in points}


def _exact_div(g: GaussInt, d: GaussInt) -> GaussInt | None:
    """g / d when d divides g exactly in Z[i], else None."""
    n = d.norm()
    num = g * d.conj()
    if num.a % n or num.b % n:
        return None
    return GaussInt(num.a // n, num.b // n)


def factor_over(g: GaussInt, atoms) -> GaussFactorization | None:
    """Express g as unit * product over the atoms, each taken as itself or
    its conjugate, aligned with the atom order.

    Returns None when no such expression exists (for instance when norms are
    incompatible); that is a normal outcome, not an error.  Atoms must have
    prime norm.
    """
    atoms = [a if isinstance(a, GaussInt) else GaussInt(*a) for a in atoms]
    norm_product = 1
    for atom in atoms:
        n = atom.norm()
        if not is_probable_prime(n):
            raise ValueError(f"atom {atom} has non-prime norm {n}")
        norm_product *= n
    if g.norm() != norm_product:
        return None

    chosen: list[GaussInt] = []

    def descend(i: int, cur: GaussInt) -> GaussInt | None:
        if i == len(atoms):
            return cur if cur.is_unit() else None
        for cand in (atoms[i], atoms[i].conj()):
            q = _exact_div(cur, cand)
            if q is not None:
                chosen.append(cand)
                unit = descend(i + 1, q)
                if unit is not None:
                    return unit
                chosen.pop()
        return None

    unit = descend(0, g)
    if unit is None:
        return None
    return GaussFactorization(unit=unit, factors=tuple(chosen))
