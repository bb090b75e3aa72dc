"""Weierstrass curves over Q, exact point arithmetic, and the curve attached to an EDS."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from edslab.eds import EDS, divides_chain, is_nonsingular, verify_recursion
from edslab.errors import (
    FormMismatch,
    InvalidInitial,
    RecursionFailure,
    SingularCurve,
    SingularSequence,
    TorsionPoint,
)

__all__ = [
    "WeierstrassCurve",
    "RationalPoint",
    "INFINITY",
    "CurveData",
    "associated_curve",
    "closed_form_disc",
    "short_model",
    "point_add",
    "point_neg",
    "point_mul",
    "denominator_sequence",
    "shipsey_signs",
    "parse_curve",
    "parse_point",
]


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` with rational coefficients."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularCurve(f"curve {self.coefficients} is singular")

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c_invariants(self) -> tuple[Fraction, Fraction]:
        b2, b4, b6, _ = self.b_invariants
        return b2 * b2 - 24 * b4, -(b2**3) + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def contains(self, P: "RationalPoint") -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        a1, a2, a3, a4, a6 = self.coefficients
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6

    def to_dict(self) -> dict:
        return {k: str(v) for k, v in zip(("a1", "a2", "a3", "a4", "a6"), self.coefficients)}


@dataclass(frozen=True)
class RationalPoint:
    """An affine point ``(x, y)``; ``RationalPoint()`` is the point at infinity."""

    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", _q(self.x))
            object.__setattr__(self, "y", _q(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def to_json(self):
        return "O" if self.is_infinity else [str(self.x), str(self.y)]


INFINITY = RationalPoint()


def point_neg(E: WeierstrassCurve, P: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return P
    return RationalPoint(P.x, -P.y - E.a1 * P.x - E.a3)


def point_add(E: WeierstrassCurve, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = E.coefficients
    if P.x == Q.x:
        if P.y + Q.y + a1 * Q.x + a3 == 0:
            return INFINITY
        lam = (3 * P.x**2 + 2 * a2 * P.x + a4 - a1 * P.y) / (2 * P.y + a1 * P.x + a3)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    nu = P.y - lam * P.x
    x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return RationalPoint(x3, y3)


def point_mul(E: WeierstrassCurve, P: RationalPoint, n: int) -> RationalPoint:
    if n < 0:
        return point_neg(E, point_mul(E, P, -n))
    result, addend = INFINITY, P
    while n:
        if n & 1:
            result = point_add(E, result, addend)
        addend = point_add(E, addend, addend)
        n >>= 1
    return result


def _multiples(E: WeierstrassCurve, P: RationalPoint, N: int) -> list[RationalPoint]:
    """``[P, 2P, ..., NP]``, raising :class:`TorsionPoint` on hitting the identity."""
    out, R = [], INFINITY
    for n in range(1, N + 1):
        R = point_add(E, R, P)
        if R.is_infinity:
            raise TorsionPoint(f"{n}P = O")
        out.append(R)
    return out


def _denominator_root(x: Fraction) -> int:
    d = isqrt(x.denominator)
    if d * d != x.denominator:
        raise FormMismatch(f"denominator of x = {x} is not a square; model is not integral at some prime")
    return d


def denominator_sequence(E: WeierstrassCurve, P: RationalPoint, N: int) -> list[int]:
    """``[D_P, D_2P, ..., D_NP]`` with ``x(nP) = A/D^2`` in lowest terms and ``D > 0``."""
    return [_denominator_root(R.x) for R in _multiples(E, P, N)]


def shipsey_signs(E: WeierstrassCurve, P: RationalPoint, N: int) -> list[int]:
    """Signed sequence ``[W1, ..., WN]`` from ``|Wn| = D_nP`` and the sign rule.

    The curve must have integer coefficients, ``a6 = 0`` and ``P = (0, 0)``.
    ``W1 = 1``, ``W2 = a3`` and ``sign(W(n-2) W(n)) = -sign(A_(n-1)P)`` for ``n >= 3``.
    When ``gcd(a3, a4) != 1`` the rule is still applied; the result is then
    usually not an EDS and :class:`RecursionFailure` is raised.
    """
    if any(c.denominator != 1 for c in E.coefficients) or E.a6 != 0:
        raise FormMismatch("need integer coefficients and a6 = 0")
    if P.is_infinity or P.x != 0 or P.y != 0:
        raise FormMismatch("need P = (0, 0)")
    if E.a3 == 0:
        raise FormMismatch("need a3 != 0")
    mult = _multiples(E, P, max(N, 2))
    D = [_denominator_root(R.x) for R in mult]
    A = [R.x.numerator for R in mult]
    W = [0, 1, int(E.a3)]
    for n in range(3, N + 1):
        if A[n - 2] == 0:
            raise FormMismatch(f"x({n - 1}P) = 0, sign rule undefined")
        sign = -1 if A[n - 2] > 0 else 1
        if W[n - 2] < 0:
            sign = -sign
        W.append(sign * D[n - 1])
    W = W[: N + 1]
    ok, where = verify_recursion(W, N)
    if not ok:
        raise RecursionFailure(f"signed denominators violate the EDS recursion at (m, n) = {where}")
    return W[1:]


@dataclass(frozen=True)
class CurveData:
    """Short model ``Y^2 = X^3 + A X + B`` with point ``(x, y)``.

    ``alpha, beta3, gamma`` are ``W2, W3, W4/W2`` when the data come from an
    EDS and ``None`` for a curve supplied directly.
    """

    A: int
    B: int
    x: Fraction
    y: Fraction
    disc: int
    alpha: int | None = None
    beta3: int | None = None
    gamma: int | None = None

    @property
    def curve(self) -> WeierstrassCurve:
        return WeierstrassCurve(0, 0, 0, self.A, self.B)

    @property
    def point(self) -> RationalPoint:
        return RationalPoint(self.x, self.y)

    def to_dict(self) -> dict:
        d = {"A": str(self.A), "B": str(self.B), "x": str(self.x), "y": str(self.y), "disc": str(self.disc)}
        if self.alpha is not None:
            d.update(alpha=str(self.alpha), beta=str(self.beta3), gamma=str(self.gamma))
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CurveData":
        opt = lambda k: int(d[k]) if k in d else None  # noqa: E731
        return cls(
            int(d["A"]), int(d["B"]), Fraction(d["x"]), Fraction(d["y"]), int(d["disc"]),
            opt("alpha"), opt("beta"), opt("gamma"),
        )


def closed_form_disc(alpha: int, beta: int, gamma: int) -> int:
    """Closed form of ``4A^3 + 27B^2`` in terms of ``W2, W3, W4/W2``."""
    a, b, g = alpha, beta, gamma
    return (
        2**8 * 3**12 * b**9 * a**8
        * (
            g * a**12
            + (-(b**3) + 3 * g**2) * a**8
            + (-20 * g * b**3 + 3 * g**3) * a**4
            + (16 * b**6 + 8 * g**2 * b**3 + g**4)
        )
    )


def associated_curve(eds: EDS) -> CurveData:
    """Curve ``Y^2 = X^3 + AX + B`` and point ``(x, y)`` attached to a nonsingular EDS."""
    if not is_nonsingular(eds):
        raise SingularSequence(f"EDS {list(eds.initial)} is singular")
    a, b, g = eds.w2, eds.w3, eds.w4 // eds.w2
    A = 27 * (
        -(a**16)
        - 4 * g * a**12
        + (16 * b**3 - 6 * g**2) * a**8
        + (8 * g * b**3 - 4 * g**3) * a**4
        - (16 * b**6 + 8 * g**2 * b**3 + g**4)
    )
    B = 54 * (
        a**24
        + 6 * g * a**20
        - (24 * b**3 - 15 * g**2) * a**16
        - (60 * g * b**3 - 20 * g**3) * a**12
        + (120 * b**6 - 36 * g**2 * b**3 + 15 * g**4) * a**8
        + (-48 * g * b**6 + 12 * g**3 * b**3 + 6 * g**5) * a**4
        + (64 * b**9 + 48 * g**2 * b**6 + 12 * g**4 * b**3 + g**6)
    )
    x = 3 * (a**8 + 2 * g * a**4 + 4 * b**3 + g**2)
    y = -108 * b**3 * a**4
    disc = 4 * A**3 + 27 * B**2
    assert y * y == x**3 + A * x + B, "associated point is off the curve"
    assert disc == closed_form_disc(a, b, g), "discriminant identity failed"
    return CurveData(A, B, Fraction(x), Fraction(y), disc, a, b, g)


def short_model(E: WeierstrassCurve, P: RationalPoint) -> CurveData:
    """Move ``(E, P)`` to ``Y^2 = X^3 - 27 c4 X - 54 c6`` keeping the orientation of ``P``."""
    c4, c6 = E.c_invariants
    b2 = E.b_invariants[0]
    A, B = -27 * c4, -54 * c6
    if A.denominator != 1 or B.denominator != 1:
        raise FormMismatch("short model needs integral c4, c6")
    if P.is_infinity:
        raise FormMismatch("need an affine point")
    X = 36 * P.x + 3 * b2
    Y = 108 * (2 * P.y + E.a1 * P.x + E.a3)
    A, B = int(A), int(B)
    return CurveData(A, B, X, Y, 4 * A**3 + 27 * B**2)


def parse_curve(text: str) -> WeierstrassCurve:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 5:
        raise InvalidInitial(f"curve literal needs five coefficients, got {text!r}")
    try:
        return WeierstrassCurve(*(Fraction(p) for p in parts))
    except ValueError as exc:
        raise InvalidInitial(f"bad curve literal {text!r}") from exc


def parse_point(text: str) -> RationalPoint:
    text = text.strip()
    if text.upper() == "O":
        return INFINITY
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 2:
        raise InvalidInitial(f"point literal needs 'x,y' or 'O', got {text!r}")
    try:
        return RationalPoint(Fraction(parts[0]), Fraction(parts[1]))
    except ValueError as exc:
        raise InvalidInitial(f"bad point literal {text!r}") from exc


def is_divisibility_sequence(values: list[int]) -> bool:
    return divides_chain(values)


def lowest_terms_ok(P: RationalPoint) -> bool:
    """``x = A/D^2, y = B/D^3`` with ``gcd(A, D) = gcd(B, D) = 1``."""
    D = _denominator_root(P.x)
    return P.y.denominator == D**3 and gcd(P.x.numerator, D) == 1 and gcd(P.y.numerator, D) == 1
