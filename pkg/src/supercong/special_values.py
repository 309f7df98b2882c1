"""Bernoulli numbers and polynomials, Fermat quotients and binomial coefficients.

Bernoulli numbers follow the convention forced by the defining recursion
B_0 = 1, sum_{k=0}^{n-1} C(n,k) B_k = 0 for n >= 2, which gives B_1 = -1/2.
They are computed exactly by that recursion; callers needing speed reduce the
cached exact values modulo a prime power afterwards.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .exact_arith import NotPIntegral, Residue, mod_inverse, p_valuation


def binomial(n: int, k: int) -> int:
    """C(n, k); zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


class BernoulliCache:
    """Write-once table of exact Bernoulli numbers, filled by the defining recursion.

    ``ensure(n)`` extends the table through index n in one pass (O(n^2)
    rational operations).  Campaigns call it once before workers start; after
    that every access is a read.
    """

    def __init__(self):
        self._table: list[Fraction] = [Fraction(1)]

    @property
    def high_water(self) -> int:
        return len(self._table) - 1

    def ensure(self, n: int) -> None:
        while self.high_water < n:
            m = self.high_water + 2  # recursion instance that pins B_{m-1}
            s = Fraction(0)
            for k in range(m - 1):
                b = self._table[k]
                if b:
                    s += comb(m, k) * b
            self._table.append(-s / m)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("Bernoulli index must be >= 0")
        self.ensure(n)
        return self._table[n]


_CACHE = BernoulliCache()


def bernoulli_number(n: int) -> Fraction:
    """B_n, with B_1 = -1/2."""
    return _CACHE[n]


def bernoulli_cache() -> BernoulliCache:
    """The shared process-wide cache (prefill it before forking workers)."""
    return _CACHE


def bernoulli_polynomial(n: int, x: Fraction | int) -> Fraction:
    """B_n(x) = sum_{k=0}^{n} C(n,k) B_k x^(n-k)."""
    x = Fraction(x)
    _CACHE.ensure(n)
    acc = Fraction(0)
    for k in range(n + 1):
        b = _CACHE[k]
        if b:
            acc += comb(n, k) * b * x ** (n - k)
    return acc


def bernoulli_polynomial_residue(n: int, x: Fraction, p: int, k: int) -> int:
    """B_n(x) mod p^k for p-integral B_n(x); used by the modular fast path.

    Valid whenever every B_j appearing (j <= n) is p-integral, which holds
    for n < p - 1 by the Clausen-von Staudt denominator description.
    """
    _CACHE.ensure(n)
    pk = p**k
    if x.denominator % p == 0:
        raise NotPIntegral(f"{x} is not a p-integral argument")
    xr = x.numerator * mod_inverse(x.denominator, pk) % pk
    acc = 0
    powers = [1] * (n + 1)
    for j in range(1, n + 1):
        powers[j] = powers[j - 1] * xr % pk
    for j in range(n + 1):
        b = _CACHE[j]
        if not b:
            continue
        if b.denominator % p == 0:
            raise NotPIntegral(f"B_{j} has p = {p} in its denominator")
        br = b.numerator * mod_inverse(b.denominator, pk) % pk
        acc = (acc + comb(n, j) * br * powers[n - j]) % pk
    return acc


def fermat_quotient_exact(x: Fraction | int, p: int) -> Fraction:
    """(x^(p-1) - 1) / p as an exact rational; requires x to be a p-adic unit."""
    x = Fraction(x)
    if x == 0 or p_valuation(x, p) != 0:
        raise NotPIntegral(f"{x} is not a p-adic unit")
    return (x ** (p - 1) - 1) / p


def fermat_quotient(x: Fraction | int, p: int, k: int) -> Residue:
    """Residue mod p^k of (x^(p-1) - 1)/p for a p-adic unit x.

    Computed modulo p^(k+1) and divided by p exactly; the divisibility is
    guaranteed by Fermat's little theorem, so no precision is lost.
    """
    x = Fraction(x)
    if x == 0 or x.numerator % p == 0 or x.denominator % p == 0:
        raise NotPIntegral(f"{x} is not a p-adic unit")
    mod = p ** (k + 1)
    u = x.numerator * mod_inverse(x.denominator, mod) % mod
    t = (pow(u, p - 1, mod) - 1) % mod
    return Residue(t // p, p, k)
