"""Singular-vector search, predicted singular weights, and the vacuum singular vector.

``find_singular`` solves for every vector of a graded piece killed by the
positive generating set ``{T_1, G+_{1/2}, G-_{1/2}}``; the remaining helpers
compare what it finds with the closed-form weight families attached to a
unitary highest weight ``(h, q) = ((jk - 1/4)/(m+2), (j-k)/(m+2))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import Gm, Gp, Mode
from .verma import (
    DEFAULT_CUTOFF,
    POSITIVE_GENERATORS,
    Grade,
    HighestWeight,
    ModuleElement,
    ModulePresentation,
    SingularityAudit,
    check_singular,
    iter_grades,
)

__all__ = [
    "SingularCertificate",
    "PredictedWeight",
    "EmbeddingReport",
    "VsingCertificate",
    "find_singular",
    "predicted_weights",
    "unitary_weight",
    "verify_embedding_data",
    "build_vsing",
    "verify_vsing",
    "half_odd",
]


@dataclass
class SingularCertificate:
    hw: HighestWeight
    grade: Grade
    solution_dim: int
    basis_vectors: List[ModuleElement]
    audits: List[SingularityAudit] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return len(self.audits) == len(self.basis_vectors) and all(a.passed for a in self.audits)


def find_singular(
    hw,
    grade: Grade,
    *,
    presentation: Optional[ModulePresentation] = None,
    paranoid: bool = False,
    cutoff=DEFAULT_CUTOFF,
) -> SingularCertificate:
    """All singular vectors of ``M_{h,q,c}`` (or of ``presentation``) at ``grade``.

    Solves ``x . v = 0`` for ``x`` in the positive generating set by exact
    nullspace computation over the PBW basis, then re-checks every solution.
    In a quotient the unknowns range over all PBW words and solutions lying
    in the submodule are discarded, so ``solution_dim`` counts singular
    vectors of the quotient modulo zero.
    """
    grade = Grade.of(grade[0], grade[1])
    if grade.level <= 0:
        raise ValueError("singular-vector search needs a positive level")
    p = presentation if presentation is not None else ModulePresentation.verma(hw, cutoff)
    hw = p.hw
    words = p.basis(grade)
    rows: List[List[Fraction]] = []
    for x in POSITIVE_GENERATORS:
        target = grade.shift(x)
        if target.level < 0:
            continue
        images = [p.act(x, p.element({w: 1})) for w in words]
        target_words = sorted({t for img in images for t in img.terms}, key=lambda t: tuple((int(m.kind), -m.index2) for m in t))
        for t in target_words:
            rows.append([img.terms.get(t, Fraction(0)) for img in images])
    null = linalg.nullspace(rows, len(words)) if words else []
    vectors = [ModuleElement(p, grade, dict(zip(words, vec))) for vec in null]
    if not p.is_verma and vectors:
        red, _ = p.span(grade)
        kept: List[ModuleElement] = []
        basis_rows = [list(r) for r in red]
        for v in vectors:
            rv = p.vector(p.reduce(v))
            if linalg.rank(basis_rows + [rv], len(words)) > len(basis_rows):
                basis_rows.append(rv)
                kept.append(p.reduce(v))
        vectors = kept
    audits = [check_singular(v, paranoid=paranoid) for v in vectors]
    cert = SingularCertificate(hw, grade, len(vectors), vectors, audits)
    if not cert.verified:
        raise ArithmeticError(f"solver returned a non-singular vector at {grade}")
    return cert


# ---------------------------------------------------------------------------
# Predicted weights


def half_odd(x) -> Fraction:
    """Coerce to a positive half-odd integer (1/2, 3/2, ...)."""
    x = Fraction(x)
    if x <= 0 or (2 * x).denominator != 1 or (2 * x) % 2 != 1:
        raise ValueError(f"{x} is not a positive half-odd integer")
    return x


def unitary_weight(m, j, k) -> Tuple[Fraction, Fraction]:
    """``(h, q)`` of the unitary point labelled by ``(j, k)`` at level ``m``."""
    m, j, k = Fraction(m), Fraction(j), Fraction(k)
    return (j * k - Fraction(1, 4)) / (m + 2), (j - k) / (m + 2)


@dataclass(frozen=True)
class PredictedWeight:
    family: int
    i: int
    h_prime: Fraction
    q_prime: Fraction
    level: Fraction
    rel_charge: int

    @property
    def grade(self) -> Grade:
        return Grade(self.level, self.rel_charge)


_FAMILY_CHARGE = {1: 0, 2: 0, 3: 1, 4: 1, 5: -1, 6: -1}


def predicted_weights(m: int, j, k, i_max: int) -> List[PredictedWeight]:
    """The six singular-weight families over ``i = 1..i_max``, ordered by ``i`` then family."""
    m = int(m)
    if m < 1:
        raise ValueError("m must be a positive integer")
    j, k = half_odd(j), half_odd(k)
    if j + k > m + 1:
        raise ValueError(f"(j, k) = ({j}, {k}) violates j + k <= m + 1")
    if i_max < 1:
        raise ValueError("i_max must be positive")
    h, q = unitary_weight(m, j, k)
    s = m + 2
    out = []
    for i in range(1, i_max + 1):
        minus = i * s - j - k
        plus = i * s + j + k
        values = {
            1: h + i * minus,
            2: h + i * plus,
            3: h + k + (i - 1) * plus,
            4: h + k + (i + 1) * minus,
            5: h + j + (i - 1) * plus,
            6: h + j + (i + 1) * minus,
        }
        for fam in range(1, 7):
            hp = values[fam]
            dq = _FAMILY_CHARGE[fam]
            out.append(PredictedWeight(fam, i, hp, q + dq, hp - h, dq))
    return out


@dataclass
class EmbeddingReport:
    m: int
    j: Fraction
    k: Fraction
    hw: HighestWeight
    level_cutoff: Fraction
    charges: Tuple[int, ...]
    predicted: List[PredictedWeight]
    dims: Dict[Grade, int]
    missing: List[Grade]
    unexpected: List[Grade]
    minimal_by_charge: Dict[int, Optional[Fraction]]
    generators_ok: bool

    @property
    def found(self) -> List[Grade]:
        return [g for g, d in self.dims.items() if d > 0]

    @property
    def passed(self) -> bool:
        return not self.missing and not self.unexpected and self.generators_ok


def verify_embedding_data(
    m: int,
    j,
    k,
    level_cutoff,
    i_max: int = 1,
    *,
    charge_window: int = 1,
    paranoid: bool = False,
    cutoff=None,
) -> EmbeddingReport:
    """Compare solver output on ``M_{h,q,c_m}`` with the predicted singular grades.

    Checks (a) every predicted grade within the cutoff hosts a singular
    vector, (b) no other grade with ``|charge| <= charge_window`` does, and
    (c) the lowest singular levels at charges 0, +1, -1 are those of
    families 1, 3, 5 at ``i = 1``.
    """
    m = int(m)
    level_cutoff = Fraction(level_cutoff)
    j, k = half_odd(j), half_odd(k)
    h, q = unitary_weight(m, j, k)
    c = Fraction(3 * m, m + 2)
    hw = HighestWeight(h, q, c)
    predicted = predicted_weights(m, j, k, i_max)
    expected = {pw.grade for pw in predicted if pw.level <= level_cutoff}
    p = ModulePresentation.verma(hw, cutoff if cutoff is not None else max(level_cutoff, DEFAULT_CUTOFF))
    charges = tuple(range(-charge_window, charge_window + 1))
    dims: Dict[Grade, int] = {}
    for g in iter_grades(level_cutoff, charges):
        if not p.basis(g):
            continue
        dims[g] = find_singular(hw, g, presentation=p, paranoid=paranoid).solution_dim
    found = {g for g, d in dims.items() if d > 0}
    missing = sorted(expected - found)
    unexpected = sorted(g for g in found - expected)

    minimal: Dict[int, Optional[Fraction]] = {}
    for s in (0, 1, -1):
        levels = [g.level for g in found if g.charge == s]
        minimal[s] = min(levels) if levels else None
    generators_ok = True
    first = {pw.family: pw for pw in predicted if pw.i == 1}
    for fam, s in ((1, 0), (3, 1), (5, -1)):
        pw = first[fam]
        if pw.level <= level_cutoff and minimal[s] != pw.level:
            generators_ok = False
    return EmbeddingReport(m, j, k, hw, level_cutoff, charges, predicted, dims, missing, unexpected, minimal, generators_ok)


# ---------------------------------------------------------------------------
# The vacuum singular vector


def _vsing_check(m: int) -> int:
    m = int(m)
    if m < 1:
        raise ValueError("m must be a positive integer")
    return m


def build_vsing(m: int, cutoff=DEFAULT_CUTOFF) -> ModuleElement:
    """``G+_{1/2} ... G+_{m+1/2} G-_{-m-3/2} ... G-_{-3/2} |0>`` in ``M_{0,0,c_m}``.

    Factors are applied right to left as written.
    """
    m = _vsing_check(m)
    if m + 1 > Fraction(cutoff):
        raise ValueError(f"v_sing has level {m + 1}, beyond cutoff {cutoff}")
    c = Fraction(3 * m, m + 2)
    p = ModulePresentation.verma(HighestWeight.of(0, 0, c), cutoff)
    lowering = [Gm(-Fraction(2 * n + 3, 2)) for n in range(m, -1, -1)]
    raising = [Gp(Fraction(2 * n + 1, 2)) for n in range(0, m + 1)]
    return p.apply_word(raising + lowering, p.highest_weight_vector())


@dataclass
class VsingCertificate:
    m: int
    vector: ModuleElement
    quotient_vector: ModuleElement
    grade: Grade
    nonzero_in_quotient: bool
    audit: SingularityAudit

    @property
    def passed(self) -> bool:
        return (
            self.nonzero_in_quotient
            and self.grade == Grade(Fraction(self.m + 1), 0)
            and self.audit.passed
        )

    def __bool__(self) -> bool:
        return self.passed


def verify_vsing(m: int, paranoid: bool = True, cutoff=DEFAULT_CUTOFF, vector: Optional[ModuleElement] = None) -> VsingCertificate:
    """Check that ``v_sing`` is a nonzero singular vector of ``V_{c_m}``.

    ``vector`` overrides the constructed element (in Verma coordinates of
    ``M_{0,0,c_m}``), which is how perturbed copies are tested.
    """
    m = _vsing_check(m)
    v = vector if vector is not None else build_vsing(m, cutoff)
    c = Fraction(3 * m, m + 2)
    quotient = ModulePresentation.vacuum(c, cutoff)
    qv = quotient.reduce(ModuleElement(quotient, v.grade, v.terms))
    if qv.is_zero():
        audit = SingularityAudit(qv, [])
        return VsingCertificate(m, v, qv, v.grade, False, audit)
    audit = check_singular(qv, paranoid=paranoid)
    return VsingCertificate(m, v, qv, v.grade, True, audit)
