"""Prime enumeration and quadratic-character utilities for verification campaigns."""

from __future__ import annotations

from dataclasses import dataclass

# Above this bound the enumerator switches to a segmented sieve so that memory
# stays proportional to the window, not to ``hi``.
_SEGMENT_THRESHOLD = 10**6


@dataclass(frozen=True)
class PrimeRange:
    """Closed interval [lo, hi]; enumeration yields exactly the primes inside it."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 2:
            raise ValueError("lo must be >= 2")
        if self.hi < self.lo:
            raise ValueError("hi must be >= lo")


def _sieve(n: int) -> list[int]:
    """All primes <= n by the sieve of Eratosthenes."""
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if flags[p]:
            start = p * p
            flags[start :: p] = bytearray(len(range(start, n + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def _segmented(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi] via a segmented sieve seeded with primes up to sqrt(hi)."""
    base = _sieve(int(hi**0.5) + 1)
    out: list[int] = []
    span = 1 << 18
    seg_lo = lo
    while seg_lo <= hi:
        seg_hi = min(seg_lo + span - 1, hi)
        flags = bytearray([1]) * (seg_hi - seg_lo + 1)
        for p in base:
            start = max(p * p, (seg_lo + p - 1) // p * p)
            if start > seg_hi:
                continue
            flags[start - seg_lo :: p] = bytearray(len(range(start, seg_hi + 1, p)))
        for i, f in enumerate(flags):
            n = seg_lo + i
            if f and n >= 2:
                out.append(n)
        seg_lo = seg_hi + 1
    return out


def primes_in_range(rng: PrimeRange) -> list[int]:
    """Ascending list of every prime p with rng.lo <= p <= rng.hi."""
    if rng.hi <= _SEGMENT_THRESHOLD:
        return [p for p in _sieve(rng.hi) if p >= rng.lo]
    return _segmented(rng.lo, rng.hi)


def legendre_symbol(a: int, p: int) -> int:
    """Quadratic character of a mod p (odd prime p) by Euler's criterion: -1, 0, or 1."""
    t = pow(a % p, (p - 1) // 2, p)
    if t == p - 1:
        return -1
    return t
