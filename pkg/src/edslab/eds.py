"""Exact elliptic divisibility sequences over Python integers.

Terms are generated from ``W1..W4`` with the duplication formulas

    W(2k+1) = W(k+2) W(k)^3 - W(k-1) W(k+1)^3
    W(2k) W(2) = W(k) (W(k+2) W(k-1)^2 - W(k-2) W(k+1)^2)

and cached, so asking for ``W(n)`` costs O(log n) big-integer products
the first time and nothing afterwards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from edslab.errors import (
    DegenerateSequence,
    InexactDivision,
    InvalidInitial,
    NotDivisible,
)

__all__ = [
    "EDS",
    "ParityValue",
    "from_initial",
    "parse_sequence",
    "term",
    "verify_recursion",
    "discriminant",
    "is_nonsingular",
    "inverse",
    "subsequence",
]


@dataclass(frozen=True)
class ParityValue:
    """Exponent of the sign: ``sign(x) == (-1) ** parity``."""

    parity: int

    def __post_init__(self):
        object.__setattr__(self, "parity", self.parity % 2)

    @property
    def sign(self) -> int:
        return -1 if self.parity else 1

    @classmethod
    def of(cls, x) -> "ParityValue":
        if x == 0:
            raise ValueError("parity of zero is undefined")
        return cls(1 if x < 0 else 0)


@dataclass(frozen=True)
class EDS:
    """A normalized elliptic divisibility sequence ``W0 = 0, W1 = 1, W2, W3, W4, ...``.

    Build instances with :func:`from_initial`. The term cache only ever
    grows; it is filled by whichever thread calls :meth:`term`, so share an
    instance across threads only after generating the terms you need.
    """

    w2: int
    w3: int
    w4: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        self._cache.update({0: 0, 1: 1, 2: self.w2, 3: self.w3, 4: self.w4})

    @property
    def initial(self) -> tuple[int, int, int, int]:
        return (1, self.w2, self.w3, self.w4)

    @property
    def degenerate(self) -> bool:
        """True when ``W2 * W3 == 0``; only W0..W4 are then available."""
        return self.w2 * self.w3 == 0

    def term(self, n: int) -> int:
        if n < 0:
            return -self.term(-n)
        cache = self._cache
        if n in cache:
            return cache[n]
        if self.w2 == 0:
            raise DegenerateSequence("W2 = 0: terms beyond W4 are not determined by the duplication formulas")
        # Fill the dependency cone bottom-up so deep indices never recurse deeply.
        pending = [n]
        needed = []
        while pending:
            m = pending.pop()
            if m in cache or m in needed:
                continue
            needed.append(m)
            k = m // 2
            for j in (k - 2, k - 1, k, k + 1, k + 2):
                if j >= 0 and j not in cache:
                    pending.append(j)
        for m in sorted(set(needed)):
            cache[m] = self._duplicate(m)
        return cache[n]

    def _duplicate(self, m: int) -> int:
        w = self._cache
        k = m // 2
        if m % 2:
            return w[k + 2] * w[k] ** 3 - w[k - 1] * w[k + 1] ** 3
        num = w[k] * (w[k + 2] * w[k - 1] ** 2 - w[k - 2] * w[k + 1] ** 2)
        q, r = divmod(num, self.w2)
        if r:
            raise InexactDivision(f"W2 = {self.w2} does not divide the numerator of W{m}")
        return q

    def terms(self, N: int) -> list[int]:
        """Return ``[W0, W1, ..., WN]``."""
        for n in range(5, N + 1):
            if n not in self._cache:
                self._cache[n] = self._duplicate(n) if self.w2 else self.term(n)
        return [self._cache[n] for n in range(N + 1)]

    def __getitem__(self, n: int) -> int:
        return self.term(n)

    def to_dict(self, N: int = 0) -> dict:
        return {
            "initial": [str(v) for v in self.initial],
            "terms": [str(v) for v in self.terms(N)[1:]] if N else [],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EDS":
        eds = from_initial(*(int(v) for v in data["initial"]))
        listed = [int(v) for v in data.get("terms", [])]
        if listed and eds.terms(len(listed))[1:] != listed:
            raise InvalidInitial("serialized terms disagree with the initial quadruple")
        return eds

    def to_json(self, N: int = 0) -> str:
        return json.dumps(self.to_dict(N))


def from_initial(w1: int, w2: int, w3: int, w4: int) -> EDS:
    """Build the normalized EDS starting ``[w1, w2, w3, w4]``.

    ``w1`` must be a unit. A sequence with ``w1 = -1`` is divided through
    by ``W1`` (every term negated), which keeps the recursion intact.
    """
    if w1 not in (1, -1):
        raise InvalidInitial(f"W1 must be 1 or -1, got {w1}")
    if w1 == -1:
        w2, w3, w4 = -w2, -w3, -w4
    if w2 == 0:
        if w4 != 0:
            raise NotDivisible(f"W2 = 0 does not divide W4 = {w4}")
    elif w4 % w2:
        raise NotDivisible(f"W2 = {w2} does not divide W4 = {w4}")
    return EDS(int(w2), int(w3), int(w4))


def parse_sequence(text: str) -> list[int]:
    """Parse a literal such as ``"1,1,-1,1"``."""
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise InvalidInitial(f"bad sequence literal {text!r}") from exc


def term(eds: EDS, n: int) -> int:
    return eds.term(n)


SequenceLike = Union[EDS, Sequence[int]]


def verify_recursion(seq: SequenceLike, N: int) -> tuple[bool, tuple[int, int] | None]:
    """Check ``W(m+n)W(m-n) = W(m+1)W(m-1)W(n)^2 - W(n+1)W(n-1)W(m)^2`` for ``N >= m >= n >= 1``.

    ``seq`` is an :class:`EDS` or a plain list indexed from ``W0``; for a
    list, pairs reaching past its end are skipped. Returns ``(True, None)``
    or ``(False, (m, n))`` for the first failing pair in lexicographic order.
    """
    if isinstance(seq, EDS):
        w = seq.terms(2 * N)
    else:
        w = list(seq)
    top = len(w) - 1
    for m in range(1, N + 1):
        for n in range(1, m + 1):
            if m + n > top or m + 1 > top:
                continue
            lhs = w[m + n] * w[m - n]
            rhs = w[m + 1] * w[m - 1] * w[n] ** 2 - w[n + 1] * w[n - 1] * w[m] ** 2
            if lhs != rhs:
                return False, (m, n)
    return True, None


def discriminant(eds: EDS) -> int:
    a, b, c = eds.w2, eds.w3, eds.w4
    return (
        c * a**15
        - b**3 * a**12
        + 3 * c**2 * a**10
        - 20 * c * b**3 * a**7
        + 3 * c**3 * a**5
        + 16 * b**6 * a**4
        + 8 * c**2 * b**3 * a**2
        + c**4
    )


def is_nonsingular(eds: EDS) -> bool:
    return eds.w2 != 0 and eds.w3 != 0 and discriminant(eds) != 0


def inverse(eds: EDS) -> EDS:
    """The sequence ``(-1)^(n-1) W(n)``, i.e. the EDS of ``-P``."""
    return EDS(-eds.w2, eds.w3, -eds.w4)


def subsequence(eds: EDS, d: int, N: int) -> list[int]:
    """Return ``[W(d), W(2d), ..., W(Nd)]`` from the d-step recursion.

    Uses ``W(d)^2 W((n+2)d) W((n-2)d) = W(2d)^2 W((n+1)d) W((n-1)d) - W(d) W(3d) W(nd)^2``
    seeded with the four direct terms ``W(d)..W(4d)``.
    """
    if d < 1:
        raise ValueError("d must be positive")
    v = [0] + [eds.term(j * d) for j in range(1, min(N, 4) + 1)]
    for n in range(3, N - 1):
        den = v[1] ** 2 * v[n - 2]
        if den == 0:
            raise DegenerateSequence(f"zero term W({(n - 2) * d}) blocks the {d}-step recursion")
        num = v[2] ** 2 * v[n + 1] * v[n - 1] - v[1] * v[3] * v[n] ** 2
        q, r = divmod(num, den)
        if r:
            raise InexactDivision(f"{d}-step recursion is not exact at W({(n + 2) * d})")
        v.append(q)
    return v[1 : N + 1]


def divides_chain(values: Iterable[int]) -> bool:
    """True when ``values[m-1] | values[n-1]`` whenever ``m | n`` (1-indexed)."""
    vals = list(values)
    for m in range(1, len(vals) + 1):
        for n in range(2 * m, len(vals) + 1, m):
            if vals[m - 1] == 0:
                if vals[n - 1] != 0:
                    return False
            elif vals[n - 1] % vals[m - 1]:
                return False
    return True
