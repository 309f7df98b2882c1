"""Exact identity checks: difference-pair certification, finite hypergeometric
summation, the alternating-binomial evaluation, the composition expansion of
inverse-power binomial sums, and the depth-one stuffle law.

Everything here is an exact statement about rationals: each checker evaluates
both sides fully and compares for equality, no congruences involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .sums import Composition, compositions_of_weight, harmonic_sum, multiple_harmonic_sum, pochhammer


class OutOfDomain(ValueError):
    """Evaluation requested at a pole or outside a summand's index range."""


@dataclass(frozen=True)
class WZPoint:
    """Evaluation point (n, k, x) for the certified pair F, G; requires 0 < x < 1."""

    n: int
    k: int
    x: Fraction

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not (0 <= self.k <= self.n):
            raise ValueError("need 0 <= k <= n")
        if not (0 < self.x < 1):
            raise ValueError("need 0 < x < 1")


def _front(n: int, x: Fraction) -> Fraction:
    """(1)_n^2 / ((x)_n (1-x)_n); finite for non-integer x."""
    return pochhammer(1, n) ** 2 / (pochhammer(x, n) * pochhammer(1 - x, n))


def _ratio(k: int, x: Fraction) -> Fraction:
    """(x)_k (1-x)_k / (1)_k^2."""
    return pochhammer(x, k) * pochhammer(1 - x, k) / pochhammer(1, k) ** 2


def wz_F(pt: WZPoint) -> Fraction:
    """F(n,k) = (1)_n^2/((x)_n (1-x)_n) * (x)_k (1-x)_k/(1)_k^2 * 1/(n-k), for k < n."""
    if pt.k >= pt.n:
        raise OutOfDomain("F has a pole at k = n")
    return _front(pt.n, pt.x) * _ratio(pt.k, pt.x) / (pt.n - pt.k)


def wz_R(pt: WZPoint) -> Fraction:
    """Certificate R(n,k) = -k^2 (n-k) / ((n+1-k)(x+n)(1-x+n))."""
    n, k, x = pt.n, pt.k, pt.x
    return Fraction(-(k * k) * (n - k)) / ((n + 1 - k) * (x + n) * (1 - x + n))


def wz_G(pt: WZPoint) -> Fraction:
    """G(n,k) = R(n,k) F(n,k), in the cancelled form that stays finite at k = n.

    The factor (n-k) of R cancels F's 1/(n-k), so G(n,n) is well defined and
    G(n,0) = 0.
    """
    n, k, x = pt.n, pt.k, pt.x
    return (
        _front(n, x)
        * _ratio(k, x)
        * Fraction(-(k * k))
        / ((n + 1 - k) * (x + n) * (1 - x + n))
    )


def check_wz_pair(pt: WZPoint) -> bool:
    """F(n+1,k) - F(n,k) == G(n,k+1) - G(n,k), exactly, for 0 <= k <= n-1."""
    n, k, x = pt.n, pt.k, pt.x
    if k > n - 1:
        raise OutOfDomain("the difference equation needs k <= n - 1")
    lhs = wz_F(WZPoint(n + 1, k, x)) - wz_F(WZPoint(n, k, x))
    rhs = wz_G(WZPoint(n, k + 1, x)) - wz_G(WZPoint(n, k, x))
    return lhs == rhs


def check_theorem1(x: Fraction, n: int) -> bool:
    """Finite summation identity:
    sum_{k=0}^{n-1} (x)_k(1-x)_k/(1)_k^2 / (n-k)
      == (x)_n(1-x)_n/(1)_n^2 * (sum_{k<n} 1/(x+k) + sum_{k<n} 1/(1-x+k)).
    """
    x = Fraction(x)
    if not (0 < x < 1):
        raise OutOfDomain("need 0 < x < 1")
    ratio = Fraction(1)
    lhs = Fraction(1, n)  # k = 0 term
    recip = Fraction(0)
    for k in range(n):
        recip += 1 / (x + k) + 1 / (1 - x + k)
        if k + 1 < n:
            ratio *= (x + k) * (1 - x + k) / Fraction((k + 1) ** 2)
            lhs += ratio / (n - k - 1)
        else:
            ratio *= (x + k) * (1 - x + k) / Fraction((k + 1) ** 2)
    return lhs == ratio * recip


def check_telescoping(x: Fraction, n: int) -> bool:
    """Summed telescoping form of the pair identity:
    sum_{k<n} F(n,k) + sum_{j<n} G(j,0) == sum_{k<n} (F(k+1,k) + G(k,k)).
    """
    x = Fraction(x)
    if not (0 < x < 1):
        raise OutOfDomain("need 0 < x < 1")
    lhs = sum(wz_F(WZPoint(n, k, x)) for k in range(n))
    lhs += sum(wz_G(WZPoint(j, 0, x)) for j in range(1, n))  # G(0,0) has n=0: empty products, value 0
    rhs = sum(wz_F(WZPoint(k + 1, k, x)) + wz_G(WZPoint(k, k, x)) for k in range(1, n))
    rhs += wz_F(WZPoint(1, 0, x))  # k = 0 boundary term; G(0,0) = 0
    return lhs == rhs


def check_prodinger(n: int, z: Fraction) -> bool:
    """sum_{k=1}^{n} (-1)^k/(z+k) C(n,k) C(n+k,k) == (1/z)((1-z)_n/(1+z)_n - 1)."""
    z = Fraction(z)
    if z == 0 or (z < 0 and z.denominator == 1 and -z.numerator <= n):
        raise OutOfDomain(f"pole at z = {z}")
    lhs = sum(Fraction((-1) ** k * comb(n, k) * comb(n + k, k)) / (z + k) for k in range(1, n + 1))
    rhs = (pochhammer(1 - z, n) / pochhammer(1 + z, n) - 1) / z
    return lhs == rhs


def check_alternating_binomial(n: int) -> bool:
    """sum_{k=0}^{n} (-1)^k C(n,k) C(n+k,k) == (-1)^n."""
    return sum((-1) ** k * comb(n, k) * comb(n + k, k) for k in range(n + 1)) == (-1) ** n


def check_theorem4(n: int, r: int) -> bool:
    """sum_{k=1}^{n} (-1)^k/k^r C(n,k)C(n+k,k)
      == - sum_{d=1}^{r} 2^d sum_{|s|=r, depth d} H_n(s)."""
    if n < 1 or r < 1:
        raise ValueError("need n, r >= 1")
    lhs = sum(Fraction((-1) ** k * comb(n, k) * comb(n + k, k), k**r) for k in range(1, n + 1))
    rhs = Fraction(0)
    for d in range(1, r + 1):
        for s in compositions_of_weight(r, d):
            rhs += 2**d * multiple_harmonic_sum(n, s)
    return lhs == -rhs


def stuffle_product(a: Composition, b: Composition, n: int) -> bool:
    """Depth-one stuffle law: H_n(a) H_n(b) == H_n(a,b) + H_n(b,a) + H_n(a+b).

    Only depth-1 operands are supported; the higher-depth quasi-shuffle
    algebra is out of scope.
    """
    a = a if isinstance(a, Composition) else Composition(tuple(a))
    b = b if isinstance(b, Composition) else Composition(tuple(b))
    if a.depth != 1 or b.depth != 1:
        raise ValueError("stuffle check is implemented for depth-1 operands only")
    (s,), (t,) = a.parts, b.parts
    lhs = harmonic_sum(n, s) * harmonic_sum(n, t)
    rhs = (
        multiple_harmonic_sum(n, (s, t))
        + multiple_harmonic_sum(n, (t, s))
        + harmonic_sum(n, s + t)
    )
    return lhs == rhs


def check_pochhammer_generating(n: int, z: Fraction) -> bool:
    """(1+z)_n == n! (1 + sum_{d=1}^{n} H_n(1,...,1 [d times]) z^d) at the given z."""
    z = Fraction(z)
    lhs = pochhammer(1 + z, n)
    rhs = Fraction(1)
    for d in range(1, n + 1):
        rhs += multiple_harmonic_sum(n, (1,) * d) * z**d
    return lhs == factorial(n) * rhs


def check_weight2_expansion(n: int) -> bool:
    """-2 H_n(2) - 4 H_n(1,1) == -2 H_n(1)^2."""
    return -2 * harmonic_sum(n, 2) - 4 * multiple_harmonic_sum(n, (1, 1)) == -2 * harmonic_sum(n, 1) ** 2


def check_weight3_expansion(n: int) -> bool:
    """-2 H_n(3) - 4 H_n(2,1) - 4 H_n(1,2) - 8 H_n(1,1,1)
      == -(4/3) H_n(1)^3 - (2/3) H_n(3)."""
    lhs = (
        -2 * harmonic_sum(n, 3)
        - 4 * multiple_harmonic_sum(n, (2, 1))
        - 4 * multiple_harmonic_sum(n, (1, 2))
        - 8 * multiple_harmonic_sum(n, (1, 1, 1))
    )
    rhs = -Fraction(4, 3) * harmonic_sum(n, 1) ** 3 - Fraction(2, 3) * harmonic_sum(n, 3)
    return lhs == rhs
