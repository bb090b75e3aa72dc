"""Realizability of integer sequences as periodic-point counts.

A sequence ``U`` of positive integers counts the points of period ``n`` of
some map iff ``(U * mu)(n) >= 0`` and ``n | (U * mu)(n)`` for every ``n``.
Only finitely many ``n`` can ever be checked, so a clean run is reported
as "realizable up to the bound", never as realizable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

from sympy import divisors, factorint

from edslab.eds import EDS
from edslab.errors import EvenTerm, NoWitnessFound, PrecisionExhausted

__all__ = [
    "mobius",
    "dirichlet_mobius",
    "realizability_check",
    "prime_power_congruence",
    "pow2_mod_periodicity",
    "nonrealizability_witness",
    "bit_periodicity",
    "RealizabilityReport",
    "PeriodicityReport",
    "BitPeriodicity",
    "Witness",
]

Arith = Union[Callable[[int], int], Sequence[int]]

NOT_REALIZABLE = "NotRealizable"
REALIZABLE_UP_TO_BOUND = "RealizableUpToBound"
INCONCLUSIVE = "Inconclusive"


def _as_function(U: Arith) -> Callable[[int], int]:
    """Sequences are read 1-indexed: ``U[0]`` is ``U(1)``."""
    if callable(U):
        return U
    values = list(U)
    return lambda n: values[n - 1]


def abs_terms(eds: EDS) -> Callable[[int], int]:
    return lambda n: abs(eds.term(n))


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    exps = factorint(n)
    if any(e > 1 for e in exps.values()):
        return 0
    return -1 if len(exps) % 2 else 1


def dirichlet_mobius(U: Arith, n: int) -> int:
    """``(U * mu)(n) = sum_{d | n} U(d) mu(n/d)``."""
    f = _as_function(U)
    return sum(f(d) * mobius(n // d) for d in divisors(n))


@dataclass(frozen=True)
class Witness:
    n: int
    kind: str  # "Negative" or "NotDivisible"
    value: int

    def to_dict(self) -> dict:
        return {"n": self.n, "kind": self.kind, "value": str(self.value)}


def _violation(n: int, value: int) -> Witness | None:
    if value < 0:
        return Witness(n, "Negative", value)
    if value % n:
        return Witness(n, "NotDivisible", value)
    return None


@dataclass
class RealizabilityReport:
    checked_bound: int
    convolution: list[int] = field(default_factory=list)
    violations: list[Witness] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return NOT_REALIZABLE if self.violations else REALIZABLE_UP_TO_BOUND

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witnesses": [w.to_dict() for w in self.violations],
            "checked_bound": self.checked_bound,
            "convolution": [str(v) for v in self.convolution],
        }


def realizability_check(U: Arith, N: int) -> RealizabilityReport:
    f = _as_function(U)
    cache: dict[int, int] = {}

    def g(n):
        if n not in cache:
            cache[n] = f(n)
        return cache[n]

    report = RealizabilityReport(N)
    for n in range(1, N + 1):
        if g(n) <= 0:
            raise ValueError(f"U({n}) = {g(n)} is not positive")
        value = dirichlet_mobius(g, n)
        report.convolution.append(value)
        bad = _violation(n, value)
        if bad:
            report.violations.append(bad)
    return report


def prime_power_congruence(U: Arith, p: int, kmax: int) -> list[bool]:
    """``[U(p^k) == U(p^(k-1)) mod p^k for k in 1..kmax]``."""
    f = _as_function(U)
    return [(f(p**k) - f(p ** (k - 1))) % p**k == 0 for k in range(1, kmax + 1)]


@dataclass
class PeriodicityReport:
    modulus: int
    preperiod: int | None
    period: int | None
    residues: list[int]

    @property
    def verified(self) -> bool:
        """The residues obey ``W(2^(k+r)) = W(2^k)`` for every ``k >= K`` in range."""
        if self.period is None:
            return False
        K, r, res = self.preperiod, self.period, self.residues
        return all(res[k + r] == res[k] for k in range(K, len(res) - r))

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "preperiod": self.preperiod,
            "period": self.period,
            "residues": self.residues,
            "verified": self.verified,
        }


def _double_state(state: tuple[int, int, int, int], mod: int) -> tuple[int, int, int, int]:
    """``(W_d, W_2d, W_3d, W_4d) -> (W_2d, W_4d, W_6d, W_8d)`` modulo ``mod``; needs W_d, W_2d odd."""
    a, b, c, d = state
    ia, ib = pow(a, -1, mod), pow(b, -1, mod)
    w6 = c * (b**4 * d * ia**5 - b * c**3 * ia**4 - d * d * ia * ib)
    w8 = d * (
        -2 * c**6 * ia**6
        + 3 * b**3 * c**3 * d * ia**7
        - c**3 * d * d * ia**3 * ib**2
        - b**6 * d * d * ia**8
    )
    return (b % mod, d % mod, w6 % mod, w8 % mod)


def pow2_mod_periodicity(eds: EDS, e: int = 2, kmax: int = 20) -> PeriodicityReport:
    """Residues ``W(2^k) mod 2^e`` for ``k = 0..kmax`` with the detected preperiod and period."""
    if eds.w2 % 2 == 0 or eds.w4 % 2 == 0:
        raise EvenTerm("W2 and W4 must both be odd")
    mod = 2**e
    state = tuple(eds.term(n) % mod for n in (1, 2, 3, 4))
    seen: dict[tuple, int] = {}
    K = r = None
    residues = []
    for k in range(kmax + 1):
        if state[0] % 2 == 0:
            raise EvenTerm(f"W(2^{k}) is even")
        residues.append(state[0])
        if K is None:
            if state in seen:
                K, r = seen[state], k - seen[state]
            else:
                seen[state] = k
        if state[1] % 2 == 0:
            raise EvenTerm(f"W(2^{k + 1}) is even")
        state = _double_state(state, mod)
    return PeriodicityReport(mod, K, r, residues)


def nonrealizability_witness(eds: EDS, kmax: int = 6) -> Witness:
    """Smallest violation of the realizability criterion for ``|W_n|``.

    Powers of two are tried first, then every ``n <= 2^kmax``.  Raises
    :class:`NoWitnessFound` when nothing turns up below the bound.
    """
    U = abs_terms(eds)
    for k in range(1, kmax + 1):
        n = 2**k
        bad = _violation(n, U(n) - U(n // 2))
        if bad:
            return bad
    report = realizability_check(U, 2**kmax)
    if report.violations:
        return report.violations[0]
    raise NoWitnessFound(2**kmax)


def sequence_witness(U: Arith, N: int) -> Witness:
    report = realizability_check(U, N)
    if report.violations:
        return report.violations[0]
    raise NoWitnessFound(N)


@dataclass(frozen=True)
class BitPeriodicity:
    verdict: str  # "EventuallyPeriodic" or "AperiodicUpTo"
    kmax: int
    bits: tuple[int, ...]
    period: int | None = None
    preperiod: int | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "kmax": self.kmax,
            "period": self.period,
            "preperiod": self.preperiod,
            "bits": "".join(map(str, self.bits)),
        }


def _exact_value(beta) -> tuple[Fraction, int | None]:
    """Exact rational value of ``beta`` and its precision in bits (None if exact)."""
    if isinstance(beta, (int, Fraction)):
        return Fraction(beta), None
    if isinstance(beta, float):
        return Fraction(beta), 53
    man, exp = beta.man_exp  # mpmath mpf
    return Fraction(man) * Fraction(2) ** exp, beta.context.prec


def bit_periodicity(beta, kmax: int = 64, guard_bits: int = 32) -> BitPeriodicity:
    """Binary digits ``b_k`` of the fractional part of ``beta`` (the parity of ``floor(2^k beta)``).

    Reports the smallest period ``r <= kmax/4`` whose repetition starts by
    ``k = kmax/2``; anything else is ``AperiodicUpTo(kmax)``.
    """
    value, prec = _exact_value(beta)
    if prec is not None:
        int_bits = abs(value.numerator // value.denominator).bit_length()
        if kmax + guard_bits > prec - int_bits:
            raise PrecisionExhausted(f"{prec}-bit beta cannot resolve {kmax} digits with {guard_bits} guard bits")
    bits = tuple((value * 2**k).__floor__() % 2 for k in range(1, kmax + 1))
    for r in range(1, kmax // 4 + 1):
        for K in range(0, kmax // 2 + 1):
            if all(bits[k + r] == bits[k] for k in range(K, kmax - r)):
                return BitPeriodicity("EventuallyPeriodic", kmax, bits, r, K + 1)
    return BitPeriodicity("AperiodicUpTo", kmax, bits)
