"""Real-analytic side: Tate parameter, normalized ``u``, ``beta`` and sign prediction.

Everything is computed on the short model ``Y^2 = X^3 + AX + B`` of a
:class:`~edslab.curve.CurveData`.  Periods and the elliptic logarithm come
from the arithmetic-geometric mean; ``q`` and ``beta`` only depend on ratios
of periods, so the normalization of the invariant differential drops out.

Each call builds its own mpmath context from a :class:`PrecisionContext`;
there is no shared global precision.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from mpmath.ctx_mp import MPContext

from edslab.curve import CurveData, associated_curve
from edslab.eds import EDS, ParityValue
from edslab.errors import (
    DegenerateInput,
    InternalInconsistency,
    PrecisionExhausted,
    SingularCurve,
    TorsionPoint,
)

__all__ = [
    "PrecisionContext",
    "Case",
    "AnalyticData",
    "tate_parameter",
    "elliptic_log_u",
    "beta",
    "analyze",
    "predict_parity",
    "predict_parities",
    "resolve_flip",
    "theta",
    "gamma_from_w2",
    "reconstruct_magnitude",
]

GUARD_BITS = 32
MAX_REFINEMENTS = 4
# Largest torsion order of a rational point (Mazur).
MAX_TORSION_ORDER = 12


@dataclass(frozen=True)
class PrecisionContext:
    mantissa_bits: int = 256

    def __post_init__(self):
        if self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be at least 64")

    @property
    def digits(self) -> int:
        return int(self.mantissa_bits * math.log10(2))

    @property
    def tolerance_bits(self) -> int:
        return self.mantissa_bits // 2

    def mp(self) -> MPContext:
        ctx = MPContext()
        ctx.prec = self.mantissa_bits + GUARD_BITS
        return ctx

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.mantissa_bits)


class Case(str, enum.Enum):
    CONNECTED = "ConnectedCase"
    IDENTITY = "IdentityComponentCase"
    NONIDENTITY = "NonidentityComponentCase"


@dataclass(frozen=True)
class AnalyticData:
    q: object
    u: object
    beta: object
    case: Case
    precision_bits: int
    flip: int | None = None
    gamma_scale: object = None
    curve: CurveData | None = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        digits = PrecisionContext(self.precision_bits).digits
        M = PrecisionContext(self.precision_bits).mp()

        def fmt(v):
            return None if v is None else M.nstr(M.mpf(v), digits, strip_zeros=False)

        return {
            "q": fmt(self.q),
            "u": fmt(self.u),
            "beta": fmt(self.beta),
            "case": self.case.value,
            "flip": self.flip,
            "gamma": fmt(self.gamma_scale),
            "precision_bits": self.precision_bits,
        }


@dataclass(frozen=True)
class _RealStructure:
    connected: bool
    roots: tuple
    omega: object        # real period
    omega_twist: object  # real period of the -1 twist (imaginary period up to i)


def _real_structure(A: int, B: int, M: MPContext) -> _RealStructure:
    disc = 4 * A**3 + 27 * B**2
    if disc == 0:
        raise SingularCurve("4A^3 + 27B^2 = 0")
    found = M.polyroots([1, 0, A, B], maxsteps=200, extraprec=2 * M.prec)
    if disc < 0:
        e1, e2, e3 = sorted((M.re(r) for r in found), reverse=True)
        omega = M.pi / M.agm(M.sqrt(e1 - e3), M.sqrt(e1 - e2))
        omega_t = M.pi / M.agm(M.sqrt(e1 - e3), M.sqrt(e2 - e3))
        return _RealStructure(False, (e1, e2, e3), omega, omega_t)
    e1 = M.re(min(found, key=lambda r: abs(M.im(r))))
    s = M.sqrt(3 * e1 * e1 + A)
    omega = M.pi / M.agm(M.sqrt((s + 3 * e1 / 2) / 2), M.sqrt(s))
    # The twist Y^2 = X^3 + AX - B has real root -e1.
    omega_t = M.pi / M.agm(M.sqrt((s - 3 * e1 / 2) / 2), M.sqrt(s))
    return _RealStructure(True, (e1,), omega, omega_t)


def _q_from(rs: _RealStructure, M: MPContext):
    if rs.connected:
        return -M.exp(-M.pi * rs.omega / rs.omega_twist)
    return M.exp(-2 * M.pi * rs.omega / rs.omega_twist)


def tate_parameter(C: CurveData, ctx: PrecisionContext = PrecisionContext()):
    """Real ``q`` with ``0 < |q| < 1``; positive exactly when ``E(R)`` has two components."""
    M = ctx.mp()
    return _q_from(_real_structure(C.A, C.B, M), M)


def _landen(a, b, c, M: MPContext):
    """Descending Landen/AGM step for ``asin(a/c)/a`` at the limit."""
    eps = M.ldexp(1, 8 - M.prec)
    for _ in range(10 * M.prec):
        c_prev = c
        a, b, c = (a + b) / 2, M.sqrt(a * b), (c + M.sqrt(c * c + b * b - a * a)) / 2
        if abs(a - b) <= eps * a and abs(c - c_prev) <= eps * c:
            break
    ratio = a / c
    if ratio > 1:
        ratio = M.mpf(1)
    return M.asin(ratio) / a


def _half_log(C: CurveData, rs: _RealStructure, M: MPContext):
    """Return ``(t, y_sign, on_egg)`` with ``t`` the folded elliptic log in ``[0, omega/2]``.

    ``t = int_x^inf dX / (2 sqrt(X^3 + AX + B))`` for points on the identity
    component; a point on the bounded component is first translated by the
    two-torsion point ``(e3, 0)``, which keeps the real part of its logarithm.
    """
    x, y = M.mpf(C.x.numerator) / C.x.denominator, M.mpf(C.y.numerator) / C.y.denominator
    if C.y == 0:
        raise TorsionPoint("point of order two")
    y_sign = 1 if C.y > 0 else -1
    if rs.connected:
        e1 = rs.roots[0]
        s = M.sqrt(3 * e1 * e1 + C.A)
        dx = x - e1
        if dx <= 0:
            raise TorsionPoint("point has x <= e1 on a connected real locus")
        t = _landen(2 * M.sqrt(s), M.sqrt(3 * e1 + 2 * s), (dx + s) / M.sqrt(dx), M)
        if dx < s:
            t = rs.omega / 2 - t
        return t, y_sign, False
    e1, e2, e3 = rs.roots
    on_egg = x < e1
    if on_egg:
        lam = y / (x - e3)
        x = lam * lam - x - e3
    return _landen(M.sqrt(e1 - e3), M.sqrt(e1 - e2), M.sqrt(x - e3), M), y_sign, on_egg


def _check_torsion(frac, M: MPContext, tol):
    for k in range(1, MAX_TORSION_ORDER + 1):
        v = k * frac
        if abs(v - M.nint(v)) < tol:
            raise TorsionPoint(f"elliptic logarithm is within {M.nstr(tol, 3)} of a {k}-torsion value")


def _orientation_fraction(C: CurveData, rs: _RealStructure, M: MPContext):
    """Elliptic log of the point as a fraction of the real period, in ``(0, 1)``, and the egg flag.

    ``E(R) = R*/q^Z`` is only fixed up to ``u -> 1/u`` (that is ``P -> -P``).
    The representative used here puts the fraction below 1/2 when ``y > 0``
    on a two-component real locus and when ``y < 0`` on a connected one.
    """
    t, y_sign, on_egg = _half_log(C, rs, M)
    frac = t / rs.omega
    small = (y_sign < 0) if rs.connected else (y_sign > 0)
    return (frac if small else 1 - frac), on_egg


def elliptic_log_u(C: CurveData, ctx: PrecisionContext = PrecisionContext()):
    """Normalized ``u``: ``q^2 < u < 1`` when ``q < 0``, else ``q < |u| < 1``."""
    M = ctx.mp()
    rs = _real_structure(C.A, C.B, M)
    q = _q_from(rs, M)
    frac, on_egg = _orientation_fraction(C, rs, M)
    _check_torsion(frac, M, M.ldexp(1, -ctx.tolerance_bits))
    if rs.connected:
        return abs(q) ** (2 * frac)
    u = q**frac
    return -u if on_egg else u


def beta(q, u, ctx: PrecisionContext = PrecisionContext()):
    """``(beta, case)`` from the sign table: identity, nonidentity or connected component."""
    M = ctx.mp()
    q, u = M.mpf(q), M.mpf(u)
    if not 0 < abs(q) < 1:
        raise DegenerateInput("need 0 < |q| < 1")
    if q > 0:
        case = Case.IDENTITY if u > 0 else Case.NONIDENTITY
        b = M.log(abs(u)) / M.log(q)
    else:
        if u <= 0:
            raise DegenerateInput("u must be positive when q < 0")
        case = Case.CONNECTED
        b = M.log(u) / (2 * M.log(-q))
    tol = M.ldexp(1, -ctx.tolerance_bits)
    for r in (0, 0.5, 1):
        if abs(b - r) < tol:
            raise DegenerateInput(f"beta = {r} corresponds to a torsion point")
    return b, case


def _base_data(C: CurveData, ctx: PrecisionContext) -> AnalyticData:
    q = tate_parameter(C, ctx)
    u = elliptic_log_u(C, ctx)
    b, case = beta(q, u, ctx)
    return AnalyticData(q, u, b, case, ctx.mantissa_bits, curve=C)


def analyze(source: EDS | CurveData, ctx: PrecisionContext = PrecisionContext()) -> AnalyticData:
    """Compute ``q, u, beta`` and, for an EDS, the flip bit and scale ``gamma``."""
    if isinstance(source, EDS):
        if any(source.term(n) == 0 for n in range(1, 13)):
            raise TorsionPoint("zero term at a positive index")
        C = associated_curve(source)
        ad = _base_data(C, ctx)
        flip = resolve_flip(source, ad)
        g = gamma_from_w2(source, ad, ctx)
        if (g < 0) != bool(flip):
            raise InternalInconsistency("sign of gamma disagrees with the flip resolved from W2")
        return replace(ad, flip=flip, gamma_scale=abs(g))
    return _base_data(source, ctx)


def _floor_parity(x, M: MPContext, tol) -> int:
    f = M.floor(x)
    frac = x - f
    if frac < tol or 1 - frac < tol:
        raise PrecisionExhausted(f"{M.nstr(x, 20)} is too close to an integer")
    return int(f) % 2


def _parity_at(ad: AnalyticData, n: int) -> int:
    ctx = PrecisionContext(ad.precision_bits)
    M = ctx.mp()
    tol = M.ldexp(1, -ctx.tolerance_bits)
    nb = n * M.mpf(ad.beta)
    if ad.case is Case.NONIDENTITY:
        p = (_floor_parity(nb, M, tol) + n // 2) if n % 2 == 0 else (n - 1) // 2
    else:
        p = _floor_parity(nb, M, tol)
    if ad.flip:
        p += n - 1
    return p % 2


def _refined(ad: AnalyticData) -> AnalyticData:
    if ad.curve is None:
        raise PrecisionExhausted("no curve attached to refine precision")
    base = _base_data(ad.curve, PrecisionContext(ad.precision_bits).doubled())
    return replace(base, flip=ad.flip, gamma_scale=ad.gamma_scale)


def predict_parity(ad: AnalyticData, n: int) -> ParityValue:
    """Parity of ``W(n)`` for ``n >= 1``, doubling precision on a floor tie (at most 4 times)."""
    if n < 1:
        raise ValueError("n must be positive")
    for attempt in range(MAX_REFINEMENTS + 1):
        try:
            return ParityValue(_parity_at(ad, n))
        except PrecisionExhausted:
            if attempt == MAX_REFINEMENTS:
                raise
            ad = _refined(ad)
    raise AssertionError("unreachable")


def predict_parities(ad: AnalyticData, N: int) -> list[int]:
    """Parities for ``n = 1..N``; refines the data once for the whole batch on a tie."""
    for attempt in range(MAX_REFINEMENTS + 1):
        try:
            return [_parity_at(ad, n) for n in range(1, N + 1)]
        except PrecisionExhausted:
            if attempt == MAX_REFINEMENTS:
                raise
            ad = _refined(ad)
    raise AssertionError("unreachable")


def resolve_flip(eds: EDS, ad: AnalyticData) -> int:
    """0 if the table formula gives the signs of ``(W_n)``, 1 if of its inverse."""
    base = replace(ad, flip=0)
    return int(predict_parity(base, 2).parity != ParityValue.of(eds.term(2)).parity)


def theta(v, q, ctx: PrecisionContext = PrecisionContext()):
    """``(1 - v) prod_{m>=1} (1 - q^m v)(1 - q^m / v) / (1 - q^m)^2``."""
    M = ctx.mp()
    v, q = M.mpf(v), M.mpf(q)
    if q == 0:
        return 1 - v
    if not abs(q) < 1:
        raise ValueError("need |q| < 1")
    if v == 0:
        raise ValueError("v must be nonzero")
    eps = M.ldexp(1, -M.prec)
    big = max(abs(v), 1 / abs(v))
    prod = 1 - v
    qm = M.mpf(1)
    while True:
        qm *= q
        prod *= (1 - qm * v) * (1 - qm / v) / (1 - qm) ** 2
        if abs(qm) * big < eps:
            return prod


def gamma_from_w2(eds: EDS, ad: AnalyticData, ctx: PrecisionContext | None = None):
    """Real ``gamma`` with ``gamma^3 = W2 theta(u)^4 / (u theta(u^2))``; may be negative."""
    ctx = ctx or PrecisionContext(ad.precision_bits)
    M = ctx.mp()
    u = M.mpf(ad.u)
    g3 = eds.term(2) * theta(u, ad.q, ctx) ** 4 / (u * theta(u * u, ad.q, ctx))
    return M.sign(g3) * M.cbrt(abs(g3))


def reconstruct_magnitude(eds: EDS, ad: AnalyticData, n: int, ctx: PrecisionContext | None = None):
    """``W(n)`` rebuilt from the theta product, sign included.

    ``gamma^(n^2-1) u^((n^2-n)/2) theta(u^n) / theta(u)^(n^2)`` with
    ``gamma = (-1)^flip * gamma_scale``.
    """
    ctx = ctx or PrecisionContext(ad.precision_bits)
    if n == 0:
        return 0
    if n < 0:
        return -reconstruct_magnitude(eds, ad, -n, ctx)
    if n * n > 2 ** (3 * ctx.mantissa_bits // 4):
        raise PrecisionExhausted(f"n = {n} too large for {ctx.mantissa_bits}-bit reconstruction")
    M = ctx.mp()
    if ad.gamma_scale is None:
        g = gamma_from_w2(eds, ad, ctx)
        flip, scale = int(g < 0), abs(g)
    else:
        flip, scale = ad.flip or 0, M.mpf(ad.gamma_scale)
    u, q = M.mpf(ad.u), M.mpf(ad.q)
    value = scale ** (n * n - 1) * u ** ((n * n - n) // 2) * theta(u**n, q, ctx) / theta(u, q, ctx) ** (n * n)
    if flip and n % 2 == 0:
        value = -value
    return value


def to_fraction(x) -> Fraction:
    """Exact dyadic value of an mpf."""
    man, exp = x.man_exp
    return Fraction(man) * Fraction(2) ** exp
