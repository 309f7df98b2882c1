"""Exact rational arithmetic, p-adic valuations and residues modulo prime powers.

Every quantity in this package is an exact rational; ``ExactRational`` is the
stdlib ``fractions.Fraction``, which already maintains the invariants we need
(always reduced, positive denominator, zero stored as 0/1).  Congruence tests
are phrased as "the p-adic valuation of the difference is at least k", which
stays meaningful even when the two sides are not individually p-integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ExactRational = Fraction

Rationalish = Fraction | int


class NotPIntegral(ValueError):
    """A rational with p in its denominator was used where a p-integral one is required."""


class NotInvertible(ValueError):
    """Modular inverse requested for an argument sharing a factor with the modulus."""


class PrecisionExhausted(ArithmeticError):
    """A modular fast-path computation ran out of tracked precision (internal)."""


class _InfiniteValuation:
    """Valuation of zero.  Compares greater than every integer.

    A singleton marker (``INFINITE_VALUATION``) rather than a numeric
    sentinel, so that ``p_valuation(a - b) >= k`` reads correctly when
    a == b.
    """

    __slots__ = ()

    def __ge__(self, other):
        return True

    def __gt__(self, other):
        return True

    def __le__(self, other):
        return isinstance(other, _InfiniteValuation)

    def __lt__(self, other):
        return False

    def __eq__(self, other):
        return isinstance(other, _InfiniteValuation)

    def __hash__(self):
        return hash("infinite-valuation")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INFINITE_VALUATION"


INFINITE_VALUATION = _InfiniteValuation()


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_valuation(q: Rationalish, p: int) -> int | _InfiniteValuation:
    """p-adic valuation of ``q``: the v with q = p^v * (unit).

    Returns ``INFINITE_VALUATION`` for q = 0.
    """
    q = Fraction(q)
    if q == 0:
        return INFINITE_VALUATION
    v = _int_valuation(abs(q.numerator), p)
    if v:
        return v
    return -_int_valuation(q.denominator, p)


@dataclass(frozen=True)
class PAdicSplit:
    """A nonzero rational written exactly as p^valuation * unit, with unit a p-adic unit."""

    prime: int
    valuation: int
    unit: Fraction

    def value(self) -> Fraction:
        return self.unit * Fraction(self.prime) ** self.valuation


def padic_split(q: Rationalish, p: int) -> PAdicSplit:
    """Split a nonzero rational into p-power and unit parts."""
    q = Fraction(q)
    if q == 0:
        raise ZeroDivisionError("zero has no p-adic unit part")
    vn = _int_valuation(abs(q.numerator), p)
    vd = _int_valuation(q.denominator, p)
    unit = Fraction(q.numerator // p**vn, q.denominator // p**vd)
    return PAdicSplit(prime=p, valuation=vn - vd, unit=unit)


def mod_inverse(a: int, modulus: int) -> int:
    """Inverse of ``a`` modulo ``modulus`` in [0, modulus), via the extended Euclid step."""
    try:
        return pow(a, -1, modulus)
    except ValueError:
        raise NotInvertible(f"{a} is not invertible modulo {modulus}") from None


def canonical_representative(q: Rationalish, m: int) -> int:
    """The unique representative of ``q`` modulo ``m`` in {0, ..., m-1}.

    Defined whenever the (reduced) denominator of q is coprime to m.
    """
    q = Fraction(q)
    return q.numerator * mod_inverse(q.denominator, m) % m


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^k: ``representative`` in [0, p^k) with an odd prime p."""

    representative: int
    prime: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("exponent must be >= 1")
        object.__setattr__(self, "representative", self.representative % self.modulus)

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def _match(self, other: "Residue") -> None:
        if (self.prime, self.exponent) != (other.prime, other.exponent):
            raise ValueError("residue arithmetic requires identical (prime, exponent)")

    def __add__(self, other: "Residue") -> "Residue":
        self._match(other)
        return Residue(self.representative + other.representative, self.prime, self.exponent)

    def __sub__(self, other: "Residue") -> "Residue":
        self._match(other)
        return Residue(self.representative - other.representative, self.prime, self.exponent)

    def __mul__(self, other: "Residue") -> "Residue":
        self._match(other)
        return Residue(self.representative * other.representative, self.prime, self.exponent)

    def __pow__(self, e: int) -> "Residue":
        return Residue(pow(self.representative, e, self.modulus), self.prime, self.exponent)

    def inverse(self) -> "Residue":
        return Residue(mod_inverse(self.representative, self.modulus), self.prime, self.exponent)

    def drop_to(self, exponent: int) -> "Residue":
        """Image under Z/p^k -> Z/p^j for j <= k (tower compatibility)."""
        if exponent > self.exponent:
            raise ValueError("cannot lift to a higher exponent")
        return Residue(self.representative % self.prime**exponent, self.prime, exponent)

    def __int__(self) -> int:
        return self.representative


def reduce_mod(q: Rationalish, p: int, k: int) -> Residue:
    """Reduce a p-integral rational modulo p^k (denominator inverted via extended Euclid)."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise NotPIntegral(f"{q} has p = {p} in its denominator")
    pk = p**k
    return Residue(q.numerator * mod_inverse(q.denominator, pk) % pk, p, k)


def congruent_mod(a: Rationalish, b: Rationalish, p: int, k: int) -> bool:
    """True iff a == b or v_p(a - b) >= k.

    This is the single congruence predicate used by every checker; it is
    well-defined even when a and b are individually not p-integral.
    """
    return p_valuation(Fraction(a) - Fraction(b), p) >= k


class ScaledResidue:
    """Modular fast-path number: a rational tracked as rep / p^shift with rep known mod p^prec.

    Supports + - * between ScaledResidues sharing a prime, and * / by exact
    ints/Fractions (whose p-parts move in and out of ``shift``).  Absolute
    precision (prec - shift) shrinks only on division by p-divisible scalars
    and on additions mixing precisions; campaign callers budget for that with
    a slack of a few extra digits.  Exact about everything it asserts: a
    ``residue``/``valuation_at_least`` answer is a theorem about the exact
    value, or else ``PrecisionExhausted`` is raised.
    """

    __slots__ = ("prime", "rep", "shift", "prec")

    def __init__(self, prime: int, rep: int, shift: int, prec: int):
        if prec < 1:
            raise PrecisionExhausted("no tracked digits left")
        self.prime = prime
        self.rep = rep % prime**prec
        self.shift = shift
        self.prec = prec

    @classmethod
    def from_rational(cls, q: Rationalish, p: int, abs_prec: int) -> "ScaledResidue":
        """Lift an exact rational, known to absolute precision ``abs_prec``."""
        q = Fraction(q)
        wd = _int_valuation(q.denominator, p)
        den_unit = q.denominator // p**wd
        prec = abs_prec + wd
        rep = q.numerator * pow(den_unit, -1, p**prec) % p**prec
        return cls(p, rep, wd, prec)

    def _rep_val(self) -> int:
        if self.rep == 0:
            return self.prec
        return _int_valuation(self.rep, self.prime)

    def _aligned(self, other: "ScaledResidue") -> tuple[int, int, int, int]:
        s = max(self.shift, other.shift)
        d1, d2 = s - self.shift, s - other.shift
        prec = min(self.prec + d1, other.prec + d2)
        p = self.prime
        return s, self.rep * p**d1, other.rep * p**d2, prec

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ScaledResidue.from_rational(other, self.prime, self.prec - self.shift)
        if self.prime != other.prime:
            raise ValueError("mixed primes")
        s, r1, r2, prec = self._aligned(other)
        return ScaledResidue(self.prime, r1 + r2, s, prec)

    __radd__ = __add__

    def __neg__(self):
        return ScaledResidue(self.prime, -self.rep, self.shift, self.prec)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ScaledResidue) else ScaledResidue.from_rational(-Fraction(other), self.prime, self.prec - self.shift))

    def __rsub__(self, other):
        return (-self) + other

    def _scalar_mul(self, q: Fraction) -> "ScaledResidue":
        if q == 0:
            return ScaledResidue(self.prime, 0, 0, self.prec - self.shift)
        p = self.prime
        wn = _int_valuation(abs(q.numerator), p)
        wd = _int_valuation(q.denominator, p)
        prec = self.prec + wn
        mod = p**prec
        rep = self.rep * (abs(q.numerator) // p**wn) % mod
        if q < 0:
            rep = -rep % mod
        rep = rep * pow(q.denominator // p**wd, -1, mod) % mod
        if wn:
            rep = rep * p**wn % mod
        return ScaledResidue(p, rep, self.shift + wd, prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scalar_mul(Fraction(other))
        if self.prime != other.prime:
            raise ValueError("mixed primes")
        prec = min(self.prec + other._rep_val(), other.prec + self._rep_val(), self.prec + other.prec)
        return ScaledResidue(self.prime, self.rep * other.rep, self.shift + other.shift, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            raise TypeError("fast-path division is only by exact scalars")
        return self._scalar_mul(1 / Fraction(other))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers not supported")
        out = ScaledResidue.from_rational(1, self.prime, self.prec - self.shift)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def valuation_at_least(self, k: int) -> bool:
        """Decide v_p(value) >= k; raises PrecisionExhausted if undecidable."""
        need = k + self.shift
        if need > self.prec:
            raise PrecisionExhausted(f"need p^{need}, know only p^{self.prec}")
        return self.rep % self.prime**need == 0

    def congruent_to(self, other, k: int) -> bool:
        return (self - other).valuation_at_least(k)

    def residue(self, k: int) -> Residue:
        """Residue mod p^k of the exact value; requires it to be p-integral."""
        ps = self.prime**self.shift
        if self.rep % ps:
            raise NotPIntegral("value is not p-integral")
        if self.prec - self.shift < k:
            raise PrecisionExhausted(f"absolute precision {self.prec - self.shift} < {k}")
        return Residue(self.rep // ps, self.prime, k)

    def __repr__(self):
        return f"ScaledResidue(p={self.prime}, rep={self.rep}, shift={self.shift}, prec={self.prec})"
