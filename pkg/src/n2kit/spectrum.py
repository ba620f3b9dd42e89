"""Admissible levels and the highest-weight sets of the N=2 vacuum algebra.

For an admissible ``m = t/u`` the simple vertex superalgebra at ``c = 3m/(m+2)``
has irreducible modules labelled by a finite set ``W`` of ``(h, q)`` pairs
and, for non-integral ``m``, a finite union ``D`` of curves
``q^2 + 4h/(m+2) = r(r+2)/(m+2)^2``.  Everything here is exact.

``N_half`` (positive half-odd integers 1/2, 3/2, ...) is the label range for
``(j, k)``; with it ``|W| = (m+1)(m+2)/2`` for integral ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Set, Tuple

from .singular import PredictedWeight, predicted_weights, unitary_weight

__all__ = [
    "AdmissibleLevel",
    "SpectrumPoint",
    "DCurve",
    "WeightViolation",
    "LemmaReport",
    "is_admissible",
    "admissibility_violation",
    "central_charge",
    "s_set",
    "w_set",
    "d_curves",
    "d_membership",
    "d_witnesses",
    "lemma_duv_check",
    "family_one_closed_form",
]


def admissibility_violation(t: int, u: int) -> Optional[str]:
    """Name the violated admissibility clause, or ``None`` if ``t/u`` is admissible."""
    if u <= 0:
        raise ValueError("u must be a positive integer")
    if gcd(abs(t), u) != 1:
        return f"gcd(t,u) = {gcd(abs(t), u)} != 1"
    if 2 * u + t - 2 < 0:
        return f"2u+t-2 >= 0 fails: 2*{u}+({t})-2 = {2 * u + t - 2}"
    return None


def is_admissible(t: int, u: int) -> bool:
    return admissibility_violation(t, u) is None


@dataclass(frozen=True)
class AdmissibleLevel:
    t: int
    u: int

    def __post_init__(self):
        problem = admissibility_violation(self.t, self.u)
        if problem is not None:
            raise ValueError(f"{self.t}/{self.u} is not admissible: {problem}")

    @classmethod
    def parse(cls, text) -> "AdmissibleLevel":
        """Accept ``"t/u"``, ``"t"``, an int, or a Fraction.

        ``"2/4"`` is rejected rather than reduced, since coprimality is part
        of admissibility.
        """
        if isinstance(text, AdmissibleLevel):
            return text
        if isinstance(text, Fraction):
            return cls(text.numerator, text.denominator)
        if isinstance(text, int):
            return cls(text, 1)
        s = str(text).strip()
        if "/" in s:
            a, b = s.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(s), 1)

    @property
    def m(self) -> Fraction:
        return Fraction(self.t, self.u)

    @property
    def N(self) -> int:
        return 2 * self.u + self.t - 2

    @property
    def is_integral(self) -> bool:
        return self.u == 1

    def __str__(self) -> str:
        return f"{self.t}/{self.u}"


def _level(m) -> AdmissibleLevel:
    return AdmissibleLevel.parse(m)


def central_charge(m) -> Fraction:
    lvl = _level(m)
    return 3 * lvl.m / (lvl.m + 2)


def s_set(m) -> List[Fraction]:
    """``{n - k(m+2) : 0 <= n <= N, 0 <= k <= u-1}``, sorted ascending."""
    lvl = _level(m)
    shift = lvl.m + 2
    return sorted({Fraction(n) - k * shift for n in range(lvl.N + 1) for k in range(lvl.u)})


@dataclass(frozen=True)
class SpectrumPoint:
    h: Fraction
    q: Fraction
    source: str  # "W" or "D"
    j: Optional[Fraction] = None
    k: Optional[Fraction] = None
    r: Optional[Fraction] = None

    @property
    def hq(self) -> Tuple[Fraction, Fraction]:
        return (self.h, self.q)


def _half_odds(limit: Fraction) -> Iterable[Fraction]:
    x = Fraction(1, 2)
    while x <= limit:
        yield x
        x += 1


def w_set(m) -> List[SpectrumPoint]:
    """Points of ``W`` ordered by ``j`` then ``k``."""
    lvl = _level(m)
    top = lvl.N + 1
    out = []
    for j in _half_odds(Fraction(top)):
        for k in _half_odds(top - j):
            h, q = unitary_weight(lvl.m, j, k)
            out.append(SpectrumPoint(h, q, "W", j=j, k=k))
    return out


@dataclass(frozen=True)
class DCurve:
    """``q^2 + 4h/(m+2) = rhs`` with ``rhs = r(r+2)/(m+2)^2``."""

    r: Fraction
    rhs: Fraction


def d_curves(m) -> List[DCurve]:
    lvl = _level(m)
    if lvl.is_integral:
        raise ValueError("D^{c_m} undefined for integral m")
    shift = lvl.m + 2
    return [DCurve(r, r * (r + 2) / shift**2) for r in s_set(lvl) if r.denominator != 1]


def d_witnesses(m, h, q) -> List[Fraction]:
    """Every ``r`` whose curve passes through ``(h, q)``, ascending."""
    lvl = _level(m)
    h, q = Fraction(h), Fraction(q)
    lhs = q * q + 4 * h / (lvl.m + 2)
    return [curve.r for curve in d_curves(lvl) if curve.rhs == lhs]


def d_membership(m, h, q) -> Tuple[bool, Optional[Fraction]]:
    """Whether ``(h, q)`` lies on a curve of ``D``; returns ``(member, witness r)``.

    ``r`` and ``-r-2`` label the same curve, so several witnesses can exist;
    the largest one (the representative with ``r >= -1``) is reported.
    """
    found = d_witnesses(m, h, q)
    if not found:
        return False, None
    return True, found[-1]


# ---------------------------------------------------------------------------
# Singular weights never return to W


def family_one_closed_form(m, j, k, i) -> Fraction:
    """``[(j - i(m+2))(k - i(m+2)) - 1/4] / (m+2)``."""
    s = Fraction(m) + 2
    return ((j - i * s) * (k - i * s) - Fraction(1, 4)) / s


@dataclass(frozen=True)
class WeightViolation:
    j: Fraction
    k: Fraction
    weight: PredictedWeight


@dataclass
class LemmaReport:
    m: int
    i_max: int
    checked: int
    violations: List[WeightViolation]
    identity_failures: List[Tuple[Fraction, Fraction, int]]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.identity_failures


def lemma_duv_check(m: int, i_max: int = 50) -> LemmaReport:
    """Every predicted singular weight of every W-point lies outside W.

    Also confirms the family-1 weights agree with the factorised closed form.
    """
    m = int(m)
    if m < 1:
        raise ValueError("m must be a positive integer")
    points = w_set(m)
    members: Set[Tuple[Fraction, Fraction]] = {p.hq for p in points}
    violations: List[WeightViolation] = []
    identity_failures: List[Tuple[Fraction, Fraction, int]] = []
    checked = 0
    for p in points:
        for pw in predicted_weights(m, p.j, p.k, i_max):
            checked += 1
            if (pw.h_prime, pw.q_prime) in members:
                violations.append(WeightViolation(p.j, p.k, pw))
            if pw.family == 1 and pw.h_prime != family_one_closed_form(m, p.j, p.k, pw.i):
                identity_failures.append((p.j, p.k, pw.i))
    return LemmaReport(m, i_max, checked, violations, identity_failures)
