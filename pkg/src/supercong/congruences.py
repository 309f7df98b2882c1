"""One checker per congruence statement; every pass flag is the single shared
predicate "v_p(lhs - rhs) >= k" evaluated on exact rationals (or on modular
scaled residues that decide exactly the same statement).

Each checker evaluates the two sides of its congruence independently and
returns a :class:`CheckRecord`.  For p <= 50 the exact path runs and, where a
modular fast path exists, the fast path runs too and must agree record for
record; for larger primes the fast path runs alone, falling back to exact
arithmetic if it cannot certify a residue.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb, gcd
from typing import Callable

from .exact_arith import (
    NotPIntegral,
    PrecisionExhausted,
    ScaledResidue,
    congruent_mod,
    mod_inverse,
    reduce_mod,
)
from .primes import legendre_symbol
from .special_values import (
    bernoulli_number,
    bernoulli_polynomial,
    bernoulli_polynomial_residue,
    fermat_quotient,
    fermat_quotient_exact,
)
from .sums import (
    InternalInvariantViolation,
    RationalParameter,
    central_ratio,
    central_ratio_terms,
    harmonic_sum,
    pochhammer_quotient_lifted,
    shifted_window_sum,
)

# Primes up to this bound run the exact path; where a fast path exists it runs
# as well and the two records are compared.
CROSSCHECK_BOUND = 50


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one congruence evaluation.

    ``lhs``/``rhs`` hold decimal residue strings mod p^k, or "num/den" exact
    strings when a side is not p-integral (possible only for small primes),
    or when the check asserts exact equality (``k`` = 0, ``modulus`` = 0).
    ``a`` doubles as the generic third integer parameter: the window shift a
    for the lemma checks, the summand index for the central-binomial
    transfer, and the reflection index j for the harmonic reflection.
    """

    check: str
    p: int
    r: int | None
    m: int | None
    a: int | None
    k: int
    lhs: str
    rhs: str
    modulus: int
    passed: bool
    skipped: bool = False
    reason: str | None = None

    def sort_key(self):
        return (self.check, self.p, self.r or 0, self.m or 0, self.a or 0)

    def to_json_obj(self) -> dict:
        return {
            "check": self.check,
            "p": self.p,
            "r": self.r,
            "m": self.m,
            "a": self.a,
            "k": self.k,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "modulus": self.modulus,
            "pass": self.passed,
            "skipped": self.skipped,
            "reason": self.reason,
        }

    def csv_row(self) -> list[str]:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        return [cell(v) for v in (self.check, self.p, self.r, self.m, self.a, self.k, self.lhs, self.rhs, self.modulus, self.passed)]


CSV_COLUMNS = ["check", "p", "r", "m", "a", "k", "lhs", "rhs", "modulus", "pass"]


def _fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class _ExactCtx:
    """Exact-rational arithmetic context."""

    is_fast = False

    def __init__(self, p: int):
        self.p = p

    def lift(self, q):
        return Fraction(q)

    def harmonic(self, n: int, r: int):
        return harmonic_sum(n, r)

    def bern_poly(self, n: int, x: Fraction):
        return bernoulli_polynomial(n, x)

    def bernoulli(self, n: int):
        return bernoulli_number(n)

    def fermat_q(self, x):
        return fermat_quotient_exact(x, self.p)

    def side(self, v, k: int) -> tuple[str, Fraction]:
        """Serialize one side: residue string if p-integral, exact string otherwise."""
        v = Fraction(v)
        try:
            return str(reduce_mod(v, self.p, k).representative), v
        except NotPIntegral:
            return _fraction_str(v), v

    def finish(self, name, p, k, lhs, rhs, **meta) -> CheckRecord:
        ls, lv = self.side(lhs, k)
        rs, rv = self.side(rhs, k)
        return CheckRecord(
            check=name, p=p, k=k, lhs=ls, rhs=rs, modulus=p**k,
            passed=congruent_mod(lv, rv, p, k),
            r=meta.get("r"), m=meta.get("m"), a=meta.get("a"),
        )


class _FastCtx:
    """Modular arithmetic context at absolute precision ``abs_prec`` digits."""

    is_fast = True

    def __init__(self, p: int, abs_prec: int):
        self.p = p
        self.N = abs_prec

    def lift(self, q):
        return ScaledResidue.from_rational(q, self.p, self.N)

    def _wrap(self, rep: int) -> ScaledResidue:
        return ScaledResidue(self.p, rep, 0, self.N)

    def harmonic(self, n: int, r: int):
        mod = self.p**self.N
        acc = 0
        for k in range(1, n + 1):
            acc = (acc + pow(k, -r, mod)) % mod
        return self._wrap(acc)

    def bern_poly(self, n: int, x: Fraction):
        return self._wrap(bernoulli_polynomial_residue(n, x, self.p, self.N))

    def bernoulli(self, n: int):
        b = bernoulli_number(n)
        if b.denominator % self.p == 0:
            raise NotPIntegral(f"B_{n} not p-integral")
        mod = self.p**self.N
        return self._wrap(b.numerator * mod_inverse(b.denominator, mod) % mod)

    def fermat_q(self, x):
        return self._wrap(fermat_quotient(x, self.p, self.N).representative)

    def side(self, v, k: int) -> tuple[str, object]:
        if isinstance(v, ScaledResidue):
            return str(v.residue(k).representative), v
        return str(reduce_mod(Fraction(v), self.p, k).representative), Fraction(v)

    def finish(self, name, p, k, lhs, rhs, **meta) -> CheckRecord:
        ls, lv = self.side(lhs, k)
        rs, rv = self.side(rhs, k)
        if isinstance(lv, ScaledResidue):
            passed = lv.congruent_to(rv, k)
        elif isinstance(rv, ScaledResidue):
            passed = rv.congruent_to(lv, k)
        else:
            passed = congruent_mod(lv, rv, p, k)
        return CheckRecord(
            check=name, p=p, k=k, lhs=ls, rhs=rs, modulus=p**k,
            passed=passed,
            r=meta.get("r"), m=meta.get("m"), a=meta.get("a"),
        )


def _skip(name: str, p: int, k: int, reason: str, **meta) -> CheckRecord:
    return CheckRecord(
        check=name, p=p, k=k, lhs="", rhs="", modulus=p**k if k else 0,
        passed=True, skipped=True, reason=reason,
        r=meta.get("r"), m=meta.get("m"), a=meta.get("a"),
    )


def _run(
    name: str,
    p: int,
    k: int,
    builder: Callable,
    method: str = "auto",
    extra_prec: int = 5,
    has_fast: bool = True,
    **meta,
) -> CheckRecord:
    """Dispatch one check through the requested arithmetic path(s).

    ``builder(ctx)`` returns the (lhs, rhs) pair.  In "auto" mode, primes up
    to CROSSCHECK_BOUND evaluate both paths and insist on identical records.
    """

    def exact() -> CheckRecord:
        ctx = _ExactCtx(p)
        lhs, rhs = builder(ctx)
        return ctx.finish(name, p, k, lhs, rhs, **meta)

    def fast() -> CheckRecord:
        ctx = _FastCtx(p, k + extra_prec)
        lhs, rhs = builder(ctx)
        return ctx.finish(name, p, k, lhs, rhs, **meta)

    if method not in ("auto", "exact", "fast"):
        raise ValueError(f"unknown method {method!r}")
    if method == "exact" or not has_fast:
        return exact()
    if method == "fast":
        try:
            return fast()
        except (PrecisionExhausted, NotPIntegral):
            return exact()
    rec = exact() if p <= CROSSCHECK_BOUND else None
    if rec is not None:
        try:
            frec = fast()
        except (PrecisionExhausted, NotPIntegral):
            frec = None
        if frec is not None and frec != rec:
            raise InternalInvariantViolation(f"fast/exact disagreement for {name} at p={p}: {frec} vs {rec}")
        return rec
    try:
        return fast()
    except (PrecisionExhausted, NotPIntegral):
        return exact()


def _guard_param(name: str, param: RationalParameter, p: int, k: int, **meta) -> CheckRecord | None:
    if p <= 3:
        return _skip(name, p, k, "requires a prime p > 3", **meta)
    if gcd(param.m, p) != 1:
        return _skip(name, p, k, f"gcd(m={param.m}, p={p}) != 1", **meta)
    return None


def _guard_prime(name: str, p: int, k: int, **meta) -> CheckRecord | None:
    if p <= 3:
        return _skip(name, p, k, "requires a prime p > 3", **meta)
    return None


# --- parameterized checks ---------------------------------------------------


def check_partial_fraction(param: RationalParameter, p: int, method: str = "auto") -> CheckRecord:
    """(1)_p / (x)_p vs m / [r/p]_m, mod p."""
    meta = {"r": param.r, "m": param.m}
    guard = _guard_param("partial_fraction", param, p, 1, **meta)
    if guard:
        return guard
    r, m = param.r, param.m
    rp = param.rep_pos(p)

    def build(ctx):
        lhs = ctx.lift(1)
        for j in range(p):
            lhs = lhs * Fraction(m * (1 + j), r + j * m)
        return lhs, ctx.lift(Fraction(m, rp))

    return _run("partial_fraction", p, 1, build, method, **meta)


FERMAT_CASES: dict[Fraction, Fraction] = {
    Fraction(1, 2): Fraction(1, 16),
    Fraction(1, 3): Fraction(1, 27),
    Fraction(1, 4): Fraction(1, 64),
    Fraction(1, 6): Fraction(1, 16 * 27),
}


def check_quotient_fermat(case: Fraction, p: int, method: str = "auto") -> CheckRecord:
    """Pochhammer quotient at x in {1/2, 1/3, 1/4, 1/6} vs minus the Fermat
    quotient of the matching power base, mod p^2."""
    case = Fraction(case)
    if case not in FERMAT_CASES:
        raise ValueError(f"case must be one of {sorted(FERMAT_CASES)}, got {case}")
    param = RationalParameter(case.numerator, case.denominator)
    meta = {"r": param.r, "m": param.m}
    guard = _guard_param("quotient_fermat", param, p, 2, **meta)
    if guard:
        return guard
    base = FERMAT_CASES[case]

    def build(ctx):
        q = pochhammer_quotient_lifted(param, p, ctx.lift)
        return q, -ctx.fermat_q(base)

    return _run("quotient_fermat", p, 2, build, method, **meta)


def check_lemma1_harmonic(param: RationalParameter, p: int, a: int, method: str = "auto") -> CheckRecord:
    """Reciprocal sums over k < ap, minus their (m/p)-scaled coarse part, vs
    -(2/3)(ap)^2 B_{p-3}(x), mod p^3."""
    meta = {"r": param.r, "m": param.m, "a": a}
    guard = _guard_param("lemma1_harmonic", param, p, 3, **meta)
    if guard:
        return guard
    r, m = param.r, param.m
    rp, rm = param.rep_pos(p), param.rep_neg(p)
    coarse = sum(Fraction(1, rp + j * m) + Fraction(1, rm + j * m) for j in range(a))

    def build(ctx):
        lhs = ctx.lift(0)
        for j in range(a * p):
            lhs = lhs + Fraction(m, r + j * m) + Fraction(m, (m - r) + j * m)
        lhs = lhs - Fraction(m, p) * coarse
        rhs = ctx.bern_poly(p - 3, param.x) * Fraction(-2 * (a * p) ** 2, 3)
        return lhs, rhs

    return _run("lemma1_harmonic", p, 3, build, method, extra_prec=2 * a + 5, **meta)


def check_lemma1_product(param: RationalParameter, p: int, a: int, method: str = "auto") -> CheckRecord:
    """Central ratio at ap vs its split across (a-1)p and p with the
    correction factor (1 + a(a-1)m^2/([r/p]_m [-r/p]_m)) / a^2, mod p^3."""
    meta = {"r": param.r, "m": param.m, "a": a}
    guard = _guard_param("lemma1_product", param, p, 3, **meta)
    if guard:
        return guard
    rp, rm = param.rep_pos(p), param.rep_neg(p)
    factor = Fraction(1, a * a) * (1 + Fraction(a * (a - 1) * param.m**2, rp * rm))

    def build(ctx):
        lhs = central_ratio(param.x, a * p, ctx.lift)
        rhs = central_ratio(param.x, (a - 1) * p, ctx.lift) * central_ratio(param.x, p, ctx.lift) * factor
        return lhs, rhs

    return _run("lemma1_product", p, 3, build, method, extra_prec=2 * a + 5, **meta)


def check_lemma2_shift(param: RationalParameter, p: int, a: int, method: str = "auto") -> CheckRecord:
    """Window sum S_a(1) vs the central ratio at ap times the shifted-weight
    base window, mod p^2."""
    meta = {"r": param.r, "m": param.m, "a": a}
    guard = _guard_param("lemma2_shift", param, p, 2, **meta)
    if guard:
        return guard

    def build(ctx):
        lhs = shifted_window_sum(param.x, a, 1, p, ctx.lift)
        inner = ctx.lift(0)
        for kk, term in central_ratio_terms(param.x, p - 1, ctx.lift):
            inner = inner + term / Fraction(a * p + kk)
        rhs = central_ratio(param.x, a * p, ctx.lift) * inner
        return lhs, rhs

    return _run("lemma2_shift", p, 2, build, method, extra_prec=2 * a + 5, **meta)


def check_main_A(param: RationalParameter, p: int, method: str = "auto") -> CheckRecord:
    """S_0(1) vs Q + (p/2) Q^2, mod p^2."""
    meta = {"r": param.r, "m": param.m}
    guard = _guard_param("main_A", param, p, 2, **meta)
    if guard:
        return guard

    def build(ctx):
        q = pochhammer_quotient_lifted(param, p, ctx.lift)
        lhs = shifted_window_sum(param.x, 0, 1, p, ctx.lift)
        return lhs, q + q * q * Fraction(p, 2)

    return _run("main_A", p, 2, build, method, **meta)


def check_main_B(param: RationalParameter, p: int, method: str = "auto") -> CheckRecord:
    """S_0(2) vs -(1/2) Q^2, mod p."""
    meta = {"r": param.r, "m": param.m}
    guard = _guard_param("main_B", param, p, 1, **meta)
    if guard:
        return guard

    def build(ctx):
        q = pochhammer_quotient_lifted(param, p, ctx.lift)
        lhs = shifted_window_sum(param.x, 0, 2, p, ctx.lift)
        return lhs, -(q * q) / Fraction(2)

    return _run("main_B", p, 1, build, method, **meta)


def check_conjecture(param: RationalParameter, p: int, method: str = "auto") -> CheckRecord:
    """S_0(2) vs -(1/2) Q^2 - (p/2) Q^3, mod p^2 (findings category)."""
    meta = {"r": param.r, "m": param.m}
    guard = _guard_param("conjecture", param, p, 2, **meta)
    if guard:
        return guard

    def build(ctx):
        q = pochhammer_quotient_lifted(param, p, ctx.lift)
        lhs = shifted_window_sum(param.x, 0, 2, p, ctx.lift)
        return lhs, -(q * q) / Fraction(2) - (q * q * q) * Fraction(p, 2)

    return _run("conjecture", p, 2, build, method, **meta)


# --- x = 1/2 specials and auxiliaries ----------------------------------------

_HALF = Fraction(1, 2)


def check_central_binomial_transfer(p: int, k_index: int, method: str = "auto") -> CheckRecord:
    """(-1)^k C(n,k) C(n+k,k) with n = (p-1)/2 vs C(2k,k)^2 / 16^k, mod p^2."""
    meta = {"a": k_index}
    guard = _guard_prime("central_binomial_transfer", p, 2, **meta)
    if guard:
        return guard
    n = (p - 1) // 2
    if not (0 <= k_index <= n):
        raise ValueError(f"need 0 <= k <= (p-1)/2, got {k_index}")
    kk = k_index
    lhs = (-1) ** kk * comb(n, kk) * comb(n + kk, kk)
    rhs = Fraction(comb(2 * kk, kk) ** 2, 16**kk)

    def build(ctx):
        return ctx.lift(lhs), ctx.lift(rhs)

    return _run("central_binomial_transfer", p, 2, build, method, **meta)


def check_mortenson(p: int, method: str = "auto") -> CheckRecord:
    """sum_{k=0}^{p-1} C(2k,k)^2/16^k vs the quadratic character of -1, mod p^2."""
    guard = _guard_prime("mortenson", p, 2)
    if guard:
        return guard

    def build(ctx):
        lhs = ctx.lift(1)
        for _, term in central_ratio_terms(_HALF, p - 1, ctx.lift):
            lhs = lhs + term
        return lhs, ctx.lift(legendre_symbol(-1, p))

    return _run("mortenson", p, 2, build, method)


def check_theorem5_first(p: int, method: str = "auto") -> CheckRecord:
    """S_0(1) at x = 1/2 vs -2 H_{(p-1)/2}(1), mod p^3."""
    guard = _guard_prime("theorem5_first", p, 3)
    if guard:
        return guard

    def build(ctx):
        lhs = shifted_window_sum(_HALF, 0, 1, p, ctx.lift)
        return lhs, ctx.harmonic((p - 1) // 2, 1) * Fraction(-2)

    return _run("theorem5_first", p, 3, build, method)


def check_theorem5_second(p: int, method: str = "auto") -> CheckRecord:
    """S_0(2) at x = 1/2 vs -2 H_{(p-1)/2}(1)^2, mod p^2."""
    guard = _guard_prime("theorem5_second", p, 2)
    if guard:
        return guard

    def build(ctx):
        lhs = shifted_window_sum(_HALF, 0, 2, p, ctx.lift)
        h = ctx.harmonic((p - 1) // 2, 1)
        return lhs, h * h * Fraction(-2)

    return _run("theorem5_second", p, 2, build, method)


def check_single_pochhammer(p: int, method: str = "auto") -> CheckRecord:
    """sum_{k=1}^{p-1} (1/2)_k/(1)_k / k vs -H_{(p-1)/2}(1), mod p^3."""
    guard = _guard_prime("single_pochhammer", p, 3)
    if guard:
        return guard

    def build(ctx):
        lhs = ctx.lift(0)
        term = ctx.lift(1)
        for k in range(1, p):
            term = term * Fraction(2 * k - 1, 2 * k)  # (x + k - 1)/k at x = 1/2
            lhs = lhs + term / Fraction(k)
        return lhs, -ctx.harmonic((p - 1) // 2, 1)

    return _run("single_pochhammer", p, 3, build, method)


def check_beta_identity(p: int, method: str = "auto") -> CheckRecord:
    """(1/2)_k^2/(1)_k^2 == C(2k,k)^2/16^k exactly for every k <= p-1 (modulus 0)."""
    if p <= 3:
        return _skip("beta_identity", p, 0, "requires a prime p > 3")
    ok = True
    last = Fraction(1)
    for k, term in central_ratio_terms(_HALF, p - 1):
        last = term
        if term != Fraction(comb(2 * k, k) ** 2, 16**k):
            ok = False
            break
    expected = Fraction(comb(2 * (p - 1), p - 1) ** 2, 16 ** (p - 1))
    return CheckRecord(
        check="beta_identity", p=p, r=None, m=None, a=None, k=0,
        lhs=_fraction_str(last), rhs=_fraction_str(expected), modulus=0, passed=ok,
    )


def check_beta_expansion(p: int, method: str = "auto") -> CheckRecord:
    """Central ratio at p for x = 1/2 vs
    (1 - (4/3) p^3 B_{p-3}) / (4 (1 + p q_p(2))^4), mod p^4."""
    guard = _guard_prime("beta_expansion", p, 4)
    if guard:
        return guard
    q2 = (pow(2, p - 1) - 1) // p

    def build(ctx):
        lhs = central_ratio(_HALF, p, ctx.lift)
        rhs = (1 - Fraction(4, 3) * p**3 * ctx.bernoulli(p - 3)) / Fraction(4 * (1 + p * q2) ** 4)
        return lhs, rhs

    return _run("beta_expansion", p, 4, build, method, extra_prec=7)


def check_raabe(p: int, method: str = "auto") -> CheckRecord:
    """B_{p-3}(1/2) == (2^(4-p) - 1) B_{p-3} exactly, and == 7 B_{p-3} mod p.

    Exact-path only: the halving identity is an exact rational statement.
    """
    guard = _guard_prime("raabe", p, 1)
    if guard:
        return guard
    b = bernoulli_number(p - 3)
    lhs = bernoulli_polynomial(p - 3, _HALF)
    exact_ok = lhs == (Fraction(2) ** (4 - p) - 1) * b

    def build(ctx):
        return lhs, 7 * b

    rec = _run("raabe", p, 1, build, method, has_fast=False)
    if not exact_ok:
        rec = replace(rec, passed=False, reason="exact halving identity failed")
    return rec


def check_sun_H1(p: int, method: str = "auto") -> CheckRecord:
    """H_{(p-1)/2}(1) vs -2q + p q^2 - (2/3) p^2 q^3 - (7/12) p^2 B_{p-3}
    with q = q_p(2), mod p^3."""
    guard = _guard_prime("sun_H1", p, 3)
    if guard:
        return guard

    def build(ctx):
        q = ctx.fermat_q(2)
        rhs = (
            q * Fraction(-2)
            + (q * q) * Fraction(p)
            - (q * q * q) * Fraction(2 * p * p, 3)
            - ctx.bernoulli(p - 3) * Fraction(7 * p * p, 12)
        )
        return ctx.harmonic((p - 1) // 2, 1), rhs

    return _run("sun_H1", p, 3, build, method)


def check_sun_H3(p: int, method: str = "auto") -> CheckRecord:
    """H_{(p-1)/2}(3) vs -2 B_{p-3}, mod p."""
    guard = _guard_prime("sun_H3", p, 1)
    if guard:
        return guard

    def build(ctx):
        return ctx.harmonic((p - 1) // 2, 3), ctx.bernoulli(p - 3) * Fraction(-2)

    return _run("sun_H3", p, 1, build, method)


def check_harmonic_reflection(p: int, j: int, method: str = "auto") -> CheckRecord:
    """H_{p-1-j}(1) vs H_j(1) mod p; at j = p-1 additionally H_{p-1}(2) == 0 mod p."""
    meta = {"a": j}
    guard = _guard_prime("harmonic_reflection", p, 1, **meta)
    if guard:
        return guard
    if not (1 <= j <= p - 1):
        raise ValueError(f"need 1 <= j <= p-1, got {j}")

    def build(ctx):
        return ctx.harmonic(p - 1 - j, 1), ctx.harmonic(j, 1)

    rec = _run("harmonic_reflection", p, 1, build, method, **meta)
    if j == p - 1 and rec.passed:

        def build2(ctx):
            return ctx.harmonic(p - 1, 2), ctx.lift(0)

        rec2 = _run("harmonic_reflection", p, 1, build2, method, **meta)
        if not rec2.passed:
            rec = replace(rec, passed=False, reason="H_{p-1}(2) not divisible by p")
    return rec
