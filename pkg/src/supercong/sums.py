"""Pochhammer symbols and quotients, harmonic and multiple harmonic sums.

The window sums S_a(b) and the Pochhammer products are written once, over a
``lift`` hook: lifting to ``Fraction`` gives the exact path, lifting to
``ScaledResidue`` gives the modular fast path.  Both paths multiply/divide by
the same explicit rational scalars, so the fast path never needs to invert a
computed (possibly non-unit) quantity.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator

from .exact_arith import (
    Residue,
    canonical_representative,
    p_valuation,
    reduce_mod,
)


class ParameterClash(ValueError):
    """A prime collided with the parameter denominator (gcd(m, p) != 1)."""


class InternalInvariantViolation(RuntimeError):
    """An internal quantity violated a structural guarantee; indicates a bug."""


def _exact_lift(q) -> Fraction:
    return Fraction(q)


@dataclass(frozen=True)
class RationalParameter:
    """The argument x = r/m with 0 < r < m and gcd(r, m) = 1.

    Unreduced input is reduced with a warning.  Per odd prime p coprime to m
    it carries the derived residues of r/p and -r/p modulo m, the combination
    t = m / (those two multiplied), and the central Pochhammer ratio.
    """

    r: int
    m: int

    def __post_init__(self):
        if not (0 < self.r < self.m):
            raise ValueError("need 0 < r < m")
        g = gcd(self.r, self.m)
        if g > 1:
            warnings.warn(f"reducing parameter {self.r}/{self.m} to {self.r // g}/{self.m // g}")
            object.__setattr__(self, "r", self.r // g)
            object.__setattr__(self, "m", self.m // g)

    @property
    def x(self) -> Fraction:
        return Fraction(self.r, self.m)

    def complement(self) -> "RationalParameter":
        """The parameter for 1 - x."""
        return RationalParameter(self.m - self.r, self.m)

    def _require_coprime(self, p: int) -> None:
        if gcd(self.m, p) != 1:
            raise ParameterClash(f"gcd(m={self.m}, p={p}) != 1")

    def rep_pos(self, p: int) -> int:
        """Canonical representative of r/p modulo m, in {1, ..., m-1}."""
        self._require_coprime(p)
        return canonical_representative(Fraction(self.r, p), self.m)

    def rep_neg(self, p: int) -> int:
        """Canonical representative of -r/p modulo m, in {1, ..., m-1}."""
        self._require_coprime(p)
        return canonical_representative(Fraction(-self.r, p), self.m)

    def t(self, p: int) -> Fraction:
        """m / (rep_pos * rep_neg) = 1/rep_pos + 1/rep_neg."""
        return Fraction(self.m, self.rep_pos(p) * self.rep_neg(p))

    def beta(self, p: int) -> Fraction:
        return beta(self, p)


@dataclass(frozen=True)
class Composition:
    """Nonempty ordered tuple of positive integers; index vector of a multiple harmonic sum."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a composition has at least one part")
        if any(s < 1 for s in self.parts):
            raise ValueError("parts must be positive integers")
        object.__setattr__(self, "parts", tuple(int(s) for s in self.parts))

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)


def pochhammer(x: Fraction | int, n: int) -> Fraction:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1); empty product for n = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = Fraction(x)
    out = Fraction(1)
    for j in range(n):
        out *= x + j
    return out


def central_ratio_terms(x: Fraction, count: int, lift: Callable = _exact_lift) -> Iterator:
    """Yield (k, (x)_k (1-x)_k / (1)_k^2) for k = 1 .. count, by running products."""
    term = lift(1)
    for k in range(1, count + 1):
        term = term * ((x + k - 1) * (1 - x + k - 1) / Fraction(k * k))
        yield k, term


def central_ratio(x: Fraction, n: int, lift: Callable = _exact_lift):
    """(x)_n (1-x)_n / (1)_n^2."""
    term = lift(1)
    for _, t in central_ratio_terms(x, n, lift):
        term = t
    return term


def beta(param: RationalParameter, p: int) -> Fraction:
    """(x)_p (1-x)_p / (1)_p^2, exactly."""
    param._require_coprime(p)
    return central_ratio(param.x, p)


def shifted_window_sum(x: Fraction, a: int, b: int, p: int, lift: Callable = _exact_lift):
    """sum_{k=ap+1}^{ap+p-1} (x)_k (1-x)_k / (1)_k^2 * k^-b."""
    total = lift(0)
    for k, term in central_ratio_terms(x, a * p + p - 1, lift):
        if k > a * p:
            total = total + term / Fraction(k**b)
    return total


def truncated_hypergeometric_sum(param: RationalParameter, a: int, b: int, p: int) -> Fraction:
    """Exact value of the window sum S_a(b) for x = r/m."""
    param._require_coprime(p)
    if a < 0 or b < 1:
        raise ValueError("need a >= 0 and b >= 1")
    return shifted_window_sum(param.x, a, b, p)


def pochhammer_quotient_lifted(param: RationalParameter, p: int, lift: Callable = _exact_lift):
    """(1/p) (1 - beta * m^2 / (rep_pos * rep_neg)), exact or modular per ``lift``."""
    param._require_coprime(p)
    if p <= 3:
        raise ValueError("the quotient is defined for primes p > 3")
    d = param.rep_pos(p) * param.rep_neg(p)
    inner = 1 - central_ratio(param.x, p, lift) * Fraction(param.m * param.m, d)
    if isinstance(inner, Fraction):
        ok = inner == 0 or p_valuation(inner, p) >= 1
    else:
        ok = inner.valuation_at_least(1)
    if not ok:
        raise InternalInvariantViolation(f"inner quotient expression not divisible by p={p}")
    return inner / Fraction(p)


def pochhammer_quotient_exact(param: RationalParameter, p: int) -> Fraction:
    """The quotient as an exact rational."""
    return pochhammer_quotient_lifted(param, p)


def pochhammer_quotient(param: RationalParameter, p: int, k: int) -> Residue:
    """Residue mod p^k of the quotient for x = r/m."""
    return reduce_mod(pochhammer_quotient_exact(param, p), p, k)


def harmonic_sum(n: int, r: int) -> Fraction:
    """H_n(r) = sum_{k=1}^{n} 1/k^r; empty sum for n = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if r < 1:
        raise ValueError("weight must be >= 1")
    return sum((Fraction(1, k**r) for k in range(1, n + 1)), Fraction(0))


_MHS_MEMO: dict[tuple[int, tuple[int, ...]], Fraction] = {}


def multiple_harmonic_sum(n: int, s: Composition | tuple[int, ...]) -> Fraction:
    """H_n(s_1, ..., s_d) over strictly increasing index tuples; 0 when n < depth.

    Tabulated by the depth recursion
    H_k(s) = H_{k-1}(s) + H_{k-1}(s_1, ..., s_{d-1}) / k^{s_d},
    with results memoized on (n, s).
    """
    parts = tuple(s.parts if isinstance(s, Composition) else s)
    Composition(parts)  # validate
    if n < 0:
        raise ValueError("n must be >= 0")
    key = (n, parts)
    hit = _MHS_MEMO.get(key)
    if hit is not None:
        return hit
    d = len(parts)
    # rows[j] = H_k(s_1..s_j) as k advances; rows[0] is the empty product 1
    rows = [Fraction(1)] + [Fraction(0)] * d
    for k in range(1, n + 1):
        inv = Fraction(1, k)
        for j in range(d, 0, -1):
            rows[j] += rows[j - 1] * inv ** parts[j - 1]
    _MHS_MEMO[key] = rows[d]
    return rows[d]


def compositions_of_weight(r: int, d: int) -> list[Composition]:
    """All d-part compositions of r in lexicographic order; empty when d > r."""
    if r < 1 or d < 1:
        raise ValueError("need positive weight and depth")
    if d > r:
        return []
    out: list[Composition] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 1:
            out.append(Composition(prefix + (remaining,)))
            return
        for first in range(1, remaining - slots + 2):
            rec(prefix + (first,), remaining - first, slots - 1)

    rec((), r, d)
    return out
