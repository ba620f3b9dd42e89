"""Verma modules of the N=2 algebra and their presented quotients.

A vector is a homogeneous linear combination of PBW words, each word a tuple
of creation modes in canonical order: the ``L`` block, then ``T``, ``G+``,
``G-``, with the absolute index non-decreasing inside each block.  The empty
word is the highest-weight vector.

Modes act by normal ordering: the acting mode is moved rightwards through a
word using the super-brackets from :mod:`n2kit.algebra` until it either
settles into canonical position or reaches the highest-weight vector.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from . import linalg
from .algebra import CENTRAL, Kind, Mode, _bracket, add_into, mode_grade

__all__ = [
    "DEFAULT_CUTOFF",
    "CutoffExceeded",
    "HighestWeight",
    "Grade",
    "Word",
    "ModuleElement",
    "ModulePresentation",
    "SingularityAudit",
    "POSITIVE_GENERATORS",
    "pbw_basis",
    "graded_dim_gf",
    "check_singular",
    "is_singular",
    "positive_modes_up_to",
    "iter_grades",
    "word_grade",
    "word_key",
]

DEFAULT_CUTOFF = Fraction(6)

Word = Tuple[Mode, ...]

POSITIVE_GENERATORS: Tuple[Mode, ...] = (
    Mode(Kind.T, 2),
    Mode(Kind.GPLUS, 1),
    Mode(Kind.GMINUS, 1),
)


class CutoffExceeded(ValueError):
    pass


class HighestWeight(NamedTuple):
    h: Fraction
    q: Fraction
    c: Fraction

    @classmethod
    def of(cls, h, q, c) -> "HighestWeight":
        return cls(Fraction(h), Fraction(q), Fraction(c))


class Grade(NamedTuple):
    """``(level, charge)`` of a homogeneous vector relative to the highest weight."""

    level: Fraction
    charge: int

    @classmethod
    def of(cls, level, charge: int) -> "Grade":
        level = Fraction(level)
        if level < 0 or (2 * level).denominator != 1:
            raise ValueError(f"level {level} is not a non-negative half-integer")
        return cls(level, int(charge))

    def shift(self, mode: Mode) -> "Grade":
        dl, dc = mode_grade(mode)
        return Grade(self.level + dl, self.charge + dc)

    def __str__(self) -> str:
        return f"({self.level}, {self.charge:+d})"


def _mode_key(mode: Mode) -> Tuple[int, int]:
    return (int(mode.kind), -mode.index2)


def word_key(word: Word) -> Tuple[Tuple[int, int], ...]:
    return tuple(_mode_key(m) for m in word)


def word_grade(word: Word) -> Grade:
    level = Fraction(0)
    charge = 0
    for m in word:
        dl, dc = mode_grade(m)
        level += dl
        charge += dc
    return Grade(level, charge)


# ---------------------------------------------------------------------------
# PBW enumeration and the character oracle


@lru_cache(maxsize=None)
def _bosonic(total2: int, min_part2: int) -> Tuple[Tuple[int, ...], ...]:
    """Partitions of ``total2`` into even parts >= ``min_part2``, non-decreasing."""
    if total2 == 0:
        return ((),)
    out = []
    part = min_part2
    while part <= total2:
        for rest in _bosonic(total2 - part, part):
            out.append((part,) + rest)
        part += 2
    return tuple(out)


@lru_cache(maxsize=None)
def _fermionic(total2: int, min_part2: int) -> Tuple[Tuple[int, ...], ...]:
    """Strictly increasing odd parts >= ``min_part2`` summing to ``total2``."""
    if total2 == 0:
        return ((),)
    out = []
    part = min_part2
    while part <= total2:
        for rest in _fermionic(total2 - part, part + 2):
            out.append((part,) + rest)
        part += 2
    return tuple(out)


@lru_cache(maxsize=None)
def _pbw_words(level2: int, charge: int) -> Tuple[Word, ...]:
    words = []
    for gp2 in range(level2 + 1):
        for plus in _fermionic(gp2, 1):
            n_minus = len(plus) - charge
            if n_minus < 0:
                continue
            for gm2 in range(level2 - gp2 + 1):
                for minus in _fermionic(gm2, 1):
                    if len(minus) != n_minus:
                        continue
                    rest = level2 - gp2 - gm2
                    for l2 in range(0, rest + 1, 2):
                        for lp in _bosonic(l2, 2):
                            for tp in _bosonic(rest - l2, 2):
                                words.append(
                                    tuple(Mode(Kind.L, -x) for x in lp)
                                    + tuple(Mode(Kind.T, -x) for x in tp)
                                    + tuple(Mode(Kind.GPLUS, -x) for x in plus)
                                    + tuple(Mode(Kind.GMINUS, -x) for x in minus)
                                )
    words.sort(key=word_key)
    return tuple(words)


def pbw_basis(grade: Grade) -> List[Word]:
    """All canonical PBW words of the given grade, in lexicographic order."""
    level2 = 2 * Fraction(grade.level)
    if level2 < 0 or level2.denominator != 1:
        return []
    return list(_pbw_words(int(level2), grade.charge))


def graded_dim_gf(grade: Grade, cutoff=DEFAULT_CUTOFF) -> int:
    """Verma graded dimension read off the product formula.

    Coefficient of ``x^level z^charge`` in
    ``prod_n (1 + x^(n-1/2) z)(1 + x^(n-1/2)/z) / (1 - x^n)^2``,
    expanded as a truncated series with integer coefficients.  This shares no
    code with :func:`pbw_basis`.
    """
    level = Fraction(grade.level)
    if level > Fraction(cutoff):
        raise CutoffExceeded(f"level {level} exceeds cutoff {cutoff}")
    top = 2 * level
    if top.denominator != 1 or top < 0:
        return 0
    return _gf_table(int(top)).get((int(top), grade.charge), 0)


@lru_cache(maxsize=None)
def _gf_table(top: int) -> Dict[Tuple[int, int], int]:
    # series keyed by (doubled level, charge)
    series: Dict[Tuple[int, int], int] = {(0, 0): 1}

    def times(series, factor):
        out: Dict[Tuple[int, int], int] = {}
        for (a, s), x in series.items():
            for (b, t), y in factor.items():
                if a + b <= top:
                    key = (a + b, s + t)
                    out[key] = out.get(key, 0) + x * y
        return {k: v for k, v in out.items() if v}

    for n in range(1, top // 2 + 2):
        odd = 2 * n - 1
        if odd <= top:
            series = times(series, {(0, 0): 1, (odd, 1): 1})
            series = times(series, {(0, 0): 1, (odd, -1): 1})
        even = 2 * n
        if even <= top:
            geometric = {(even * p, 0): 1 for p in range(top // even + 1)}
            series = times(series, geometric)
            series = times(series, geometric)
    return series


# ---------------------------------------------------------------------------
# Normal ordering


class _Engine:
    """Action of single modes on PBW words for one highest weight (memoised)."""

    def __init__(self, hw: HighestWeight):
        self.hw = hw
        self._memo: Dict[Tuple[Mode, Word], Dict[Word, Fraction]] = {}
        self._lock = threading.Lock()

    def apply(self, mode: Mode, word: Word) -> Dict[Word, Fraction]:
        """``mode`` applied to ``word``; the returned dict must not be mutated."""
        key = (mode, word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        result = self._apply(mode, word)
        with self._lock:
            self._memo.setdefault(key, result)
        return result

    def _apply(self, mode: Mode, word: Word) -> Dict[Word, Fraction]:
        hw = self.hw
        if mode.kind is Kind.C:
            return {word: hw.c} if hw.c else {}
        if not word:
            if mode.index2 > 0:
                return {}
            if mode.index2 == 0:
                if mode.kind is Kind.L:
                    return {(): hw.h} if hw.h else {}
                if mode.kind is Kind.T:
                    return {(): hw.q} if hw.q else {}
                # G modes never carry index 0
            return {(mode,): Fraction(1)}

        first, rest = word[0], word[1:]
        if mode.index2 < 0:
            k_mode, k_first = _mode_key(mode), _mode_key(first)
            if k_mode < k_first:
                return {(mode,) + word: Fraction(1)}
            if mode == first:
                return {} if mode.is_odd else {(mode,) + word: Fraction(1)}

        out: Dict[Word, Fraction] = {}
        sign = -1 if (mode.is_odd and first.is_odd) else 1
        for w, x in self.apply(mode, rest).items():
            for w2, y in self.apply(first, w).items():
                add_into(out, w2, sign * x * y)
        for m, x in _bracket(mode, first):
            if m.kind is Kind.C:
                if hw.c:
                    add_into(out, rest, x * hw.c)
                continue
            for w, y in self.apply(m, rest).items():
                add_into(out, w, x * y)
        return out

    def apply_vector(self, mode: Mode, terms: Mapping[Word, Fraction]) -> Dict[Word, Fraction]:
        out: Dict[Word, Fraction] = {}
        for w, x in terms.items():
            for w2, y in self.apply(mode, w).items():
                add_into(out, w2, x * y)
        return out


@lru_cache(maxsize=64)
def _engine(hw: HighestWeight) -> _Engine:
    return _Engine(hw)


# ---------------------------------------------------------------------------
# Elements and presentations


class ModuleElement:
    """Homogeneous vector of a presented module, stored in Verma coordinates.

    In a quotient the stored terms are the canonical coset representative, so
    two elements are equal exactly when their coefficient maps agree.
    """

    __slots__ = ("presentation", "grade", "terms")

    def __init__(self, presentation: "ModulePresentation", grade: Grade, terms: Mapping[Word, Fraction]):
        self.presentation = presentation
        self.grade = grade
        clean = {}
        for w, x in terms.items():
            if x:
                if word_grade(w) != grade:
                    raise ValueError(f"word {w} does not have grade {grade}; elements must be homogeneous")
                clean[w] = Fraction(x)
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "ModuleElement") -> None:
        if other.presentation is not self.presentation:
            raise ValueError("elements live in different modules")
        if other.grade != self.grade and other.terms and self.terms:
            raise ValueError(f"cannot add grades {self.grade} and {other.grade}")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        out = dict(self.terms)
        for w, x in other.terms.items():
            add_into(out, w, x)
        grade = self.grade if self.terms else other.grade
        return self.presentation.reduce(ModuleElement(self.presentation, grade, out))

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.presentation, self.grade, {w: -x for w, x in self.terms.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "ModuleElement":
        s = Fraction(scalar)
        return ModuleElement(self.presentation, self.grade, {w: s * x for w, x in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.presentation is other.presentation and self.terms == other.terms and (
            not self.terms or self.grade == other.grade
        )

    def __hash__(self):
        return hash((self.grade, frozenset(self.terms.items())))

    def coefficient(self, word: Sequence[Mode]) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def sorted_terms(self) -> List[Tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, x in self.sorted_terms():
            name = " ".join(str(m) for m in w) or "|hw>"
            parts.append(f"({x})*{name}")
        return " + ".join(parts)


class ModulePresentation:
    """The Verma module ``M_{h,q,c}`` divided by the submodule generated by
    ``generators`` (none for the Verma module itself).

    Generators are homogeneous vectors given in Verma coordinates.
    """

    def __init__(self, hw: HighestWeight, generators: Iterable = (), cutoff=DEFAULT_CUTOFF):
        self.hw = HighestWeight.of(*hw)
        self.cutoff = Fraction(cutoff)
        self._engine = _engine(self.hw)
        gens = []
        for g in generators:
            if isinstance(g, ModuleElement):
                if g.presentation.hw != self.hw:
                    raise ValueError("generator belongs to a different highest weight")
                gens.append((g.grade, dict(g.terms)))
            else:
                grade, terms = g
                gens.append((grade, dict(terms)))
        self.generators: Tuple[Tuple[Grade, Dict[Word, Fraction]], ...] = tuple(
            (gr, t) for gr, t in gens if t
        )
        self._span_cache: Dict[Grade, Tuple[linalg.Matrix, List[int]]] = {}
        self._lowered: Optional[Dict[Grade, List[Dict[Word, Fraction]]]] = None
        self._lock = threading.Lock()

    @classmethod
    def verma(cls, hw, cutoff=DEFAULT_CUTOFF) -> "ModulePresentation":
        return cls(hw, (), cutoff)

    @classmethod
    def vacuum(cls, c, cutoff=DEFAULT_CUTOFF) -> "ModulePresentation":
        """``V_c``: ``M_{0,0,c}`` modulo the submodule generated by ``G^{+-}_{-1/2}|0>``."""
        hw = HighestWeight.of(0, 0, c)
        gens = [
            (Grade(Fraction(1, 2), 1), {(Mode(Kind.GPLUS, -1),): Fraction(1)}),
            (Grade(Fraction(1, 2), -1), {(Mode(Kind.GMINUS, -1),): Fraction(1)}),
        ]
        return cls(hw, gens, cutoff)

    @property
    def is_verma(self) -> bool:
        return not self.generators

    def ambient(self) -> "ModulePresentation":
        """The plain Verma module with the same highest weight and cutoff."""
        return ModulePresentation(self.hw, (), self.cutoff) if self.generators else self

    def __repr__(self) -> str:
        h, q, c = self.hw
        kind = "Verma" if self.is_verma else f"quotient by {len(self.generators)} generator(s)"
        return f"<ModulePresentation M({h}, {q}, {c}) {kind}>"

    # -- construction -----------------------------------------------------

    def _check_cutoff(self, grade: Grade) -> None:
        if grade.level > self.cutoff:
            raise CutoffExceeded(f"level {grade.level} exceeds the configured cutoff {self.cutoff}")

    def highest_weight_vector(self) -> ModuleElement:
        return ModuleElement(self, Grade(Fraction(0), 0), {(): Fraction(1)})

    def zero(self, grade: Grade) -> ModuleElement:
        return ModuleElement(self, grade, {})

    def element(self, terms: Mapping[Sequence[Mode], object], grade: Optional[Grade] = None) -> ModuleElement:
        """Element from canonical words; non-canonical words are normal ordered."""
        total: Optional[ModuleElement] = None
        for modes, coeff in terms.items():
            v = Fraction(coeff) * self.create(*modes)
            total = v if total is None else total + v
        if total is None:
            if grade is None:
                raise ValueError("grade is required for an empty element")
            return self.zero(grade)
        return total

    def create(self, *modes: Mode) -> ModuleElement:
        """``modes[0] modes[1] ... modes[-1] |hw>``, applied right to left."""
        return self.apply_word(modes, self.highest_weight_vector())

    def apply_word(self, modes: Sequence[Mode], v: ModuleElement) -> ModuleElement:
        for m in reversed(tuple(modes)):
            v = self.act(m, v)
        return v

    # -- action -----------------------------------------------------------

    def act(self, mode: Mode, v: ModuleElement) -> ModuleElement:
        if v.presentation is not self:
            raise ValueError("vector belongs to another module")
        grade = v.grade.shift(mode)
        if grade.level < 0:
            return ModuleElement(self, grade, {})
        terms = self._engine.apply_vector(mode, v.terms)
        return self.reduce(ModuleElement(self, grade, terms))

    def act_linear(self, x: Mapping[Mode, Fraction], v: ModuleElement) -> ModuleElement:
        """Action of an algebra element (a mode -> coefficient map)."""
        total: Optional[ModuleElement] = None
        for mode, coeff in x.items():
            w = Fraction(coeff) * self.act(mode, v)
            if total is None:
                total = w
            elif w.terms:
                total = total + w if total.terms else w
        if total is None:
            return self.zero(v.grade)
        return total

    # -- quotient machinery -----------------------------------------------

    def _lowered_generators(self) -> Dict[Grade, List[Dict[Word, Fraction]]]:
        """Bases of ``U(n+) . generators``, graded, in Verma coordinates."""
        if self._lowered is not None:
            return self._lowered
        found: Dict[Grade, Tuple[linalg.Matrix, List[int], List[Word]]] = {}
        queue: List[Tuple[Grade, Dict[Word, Fraction]]] = list(self.generators)
        result: Dict[Grade, List[Dict[Word, Fraction]]] = {}
        while queue:
            grade, terms = queue.pop()
            if not terms:
                continue
            words = pbw_basis(grade)
            col = {w: i for i, w in enumerate(words)}
            vec = [Fraction(0)] * len(words)
            for w, x in terms.items():
                vec[col[w]] = x
            red, piv, _ = found.get(grade, ([], [], words))
            if linalg.rank(red + [vec], len(words)) == len(red):
                continue
            red, piv = linalg.rref(red + [vec], len(words))
            found[grade] = (red, piv, words)
            result.setdefault(grade, []).append(terms)
            for g in POSITIVE_GENERATORS:
                lower = grade.shift(g)
                if lower.level < 0:
                    continue
                queue.append((lower, self._engine.apply_vector(g, terms)))
        self._lowered = result
        return result

    def span(self, grade: Grade) -> Tuple[linalg.Matrix, List[int]]:
        """Reduced row-echelon basis (over :func:`pbw_basis`) of the submodule at ``grade``."""
        hit = self._span_cache.get(grade)
        if hit is not None:
            return hit
        self._check_cutoff(grade)
        words = pbw_basis(grade)
        if not self.generators or not words:
            res: Tuple[linalg.Matrix, List[int]] = ([], [])
        else:
            col = {w: i for i, w in enumerate(words)}
            rows = []
            for g_grade, vectors in self._lowered_generators().items():
                diff = Grade(grade.level - g_grade.level, grade.charge - g_grade.charge)
                if diff.level < 0:
                    continue
                for creator in pbw_basis(diff):
                    for terms in vectors:
                        out = dict(terms)
                        for m in reversed(creator):
                            out = self._engine.apply_vector(m, out)
                        if out:
                            row = [Fraction(0)] * len(words)
                            for w, x in out.items():
                                row[col[w]] = x
                            rows.append(row)
            res = linalg.rref(rows, len(words)) if rows else ([], [])
        with self._lock:
            self._span_cache.setdefault(grade, res)
        return res

    def submodule_span(self, grade: Grade) -> List[ModuleElement]:
        """Row-echelon basis of the submodule at ``grade``, as Verma-coordinate vectors."""
        red, _ = self.span(grade)
        words = pbw_basis(grade)
        verma = self.ambient()
        return [ModuleElement(verma, grade, dict(zip(words, row))) for row in red]

    def reduce(self, v: ModuleElement) -> ModuleElement:
        if not self.generators or not v.terms or v.grade.level < 0:
            return v
        red, piv = self.span(v.grade)
        if not red:
            return v
        words = pbw_basis(v.grade)
        col = {w: i for i, w in enumerate(words)}
        vec = [Fraction(0)] * len(words)
        for w, x in v.terms.items():
            vec[col[w]] = x
        vec = linalg.reduce_against(vec, red, piv)
        out = {w: x for w, x in zip(words, vec) if x}
        if out == v.terms:
            return v
        return ModuleElement(self, v.grade, out)

    # -- dimensions -------------------------------------------------------

    def basis(self, grade: Grade) -> List[Word]:
        self._check_cutoff(grade)
        return pbw_basis(grade)

    def graded_dim(self, grade: Grade) -> int:
        words = self.basis(grade)
        if not self.generators:
            return len(words)
        return len(words) - len(self.span(grade)[0])

    def vector(self, v: ModuleElement, words: Optional[Sequence[Word]] = None) -> List[Fraction]:
        """Coordinates of ``v`` over ``words`` (default: the PBW basis of its grade)."""
        if words is None:
            words = pbw_basis(v.grade)
        return [v.terms.get(w, Fraction(0)) for w in words]


# ---------------------------------------------------------------------------
# Singularity


def positive_modes_up_to(level) -> List[Mode]:
    """Every annihilation mode ``L_n, T_n, G^{+-}_r`` with ``0 < n, r <= level``."""
    top2 = int(2 * Fraction(level))
    modes: List[Mode] = []
    for i2 in range(1, top2 + 1):
        if i2 % 2 == 0:
            modes += [Mode(Kind.L, i2), Mode(Kind.T, i2)]
        else:
            modes += [Mode(Kind.GPLUS, i2), Mode(Kind.GMINUS, i2)]
    return modes


@dataclass
class SingularityAudit:
    vector: ModuleElement
    checks: List[Tuple[Mode, ModuleElement]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.is_zero() for _, r in self.checks)

    def __bool__(self) -> bool:
        return self.passed


def check_singular(v: ModuleElement, paranoid: bool = False) -> SingularityAudit:
    if v.is_zero():
        raise ValueError("zero vector is not a singular-vector candidate")
    p = v.presentation
    modes = list(POSITIVE_GENERATORS)
    if paranoid:
        modes += [m for m in positive_modes_up_to(max(v.grade.level, Fraction(1, 2))) if m not in modes]
    audit = SingularityAudit(v)
    for m in modes:
        audit.checks.append((m, p.act(m, v)))
    return audit


def is_singular(v: ModuleElement, paranoid: bool = False) -> bool:
    return check_singular(v, paranoid).passed


def iter_grades(max_level, charges: Iterable[int]) -> Iterator[Grade]:
    """Grades with ``0 < level <= max_level`` over the given charges, level-major."""
    charges = list(charges)
    top2 = int(2 * Fraction(max_level))
    for l2 in range(1, top2 + 1):
        for s in charges:
            yield Grade(Fraction(l2, 2), s)
