"""Modes and super-brackets of the N=2 superconformal algebra.

Every basis element is a :class:`Mode`: a kind (``L``, ``T``, ``G+``, ``G-``
or the central ``C``) together with its index stored doubled, so ``L_{-2}``
is ``Mode(Kind.L, -4)`` and ``G^+_{1/2}`` is ``Mode(Kind.GPLUS, 1)``.

Brackets are returned as plain ``dict[Mode, Fraction]``; the central element
stays symbolic (a ``Mode(Kind.C, 0)`` key) until a highest weight fixes ``c``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, NamedTuple, Tuple

__all__ = [
    "Kind",
    "Mode",
    "AlgebraElement",
    "CENTRAL",
    "L",
    "T",
    "Gp",
    "Gm",
    "parity",
    "mode_grade",
    "bracket",
    "bracket_linear",
    "add_into",
]


class Kind(enum.IntEnum):
    # Integer values fix the PBW block order.
    L = 0
    T = 1
    GPLUS = 2
    GMINUS = 3
    C = 4

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {Kind.L: "L", Kind.T: "T", Kind.GPLUS: "G+", Kind.GMINUS: "G-", Kind.C: "C"}
_BY_LABEL = {v: k for k, v in _LABELS.items()}


class Mode(NamedTuple):
    kind: Kind
    index2: int

    @classmethod
    def parse(cls, label: str, index2: int) -> "Mode":
        return cls.make(_BY_LABEL[label], index2)

    @classmethod
    def make(cls, kind: Kind, index2: int) -> "Mode":
        kind = Kind(kind)
        odd = kind in (Kind.GPLUS, Kind.GMINUS)
        if odd != (index2 % 2 == 1):
            raise ValueError(f"{kind.label} cannot carry doubled index {index2}")
        if kind is Kind.C and index2 != 0:
            raise ValueError("the central element has no index")
        return cls(kind, index2)

    @property
    def index(self) -> Fraction:
        return Fraction(self.index2, 2)

    @property
    def is_odd(self) -> bool:
        return self.kind is Kind.GPLUS or self.kind is Kind.GMINUS

    def __str__(self) -> str:
        if self.kind is Kind.C:
            return "C"
        idx = self.index
        return f"{self.kind.label}_{{{idx}}}"

    __repr__ = __str__


AlgebraElement = Dict[Mode, Fraction]

CENTRAL = Mode(Kind.C, 0)


def L(n: int) -> Mode:
    return Mode(Kind.L, 2 * n)


def T(n: int) -> Mode:
    return Mode(Kind.T, 2 * n)


def Gp(r) -> Mode:
    """``G^+_r``; ``r`` may be a Fraction, a string like ``"-1/2"`` or a float."""
    return Mode.make(Kind.GPLUS, _double(r))


def Gm(r) -> Mode:
    return Mode.make(Kind.GMINUS, _double(r))


def _double(r) -> int:
    d = Fraction(r) * 2
    if d.denominator != 1:
        raise ValueError(f"{r} is not a half-integer")
    return int(d)


def parity(mode: Mode) -> str:
    return "odd" if mode.is_odd else "even"


def mode_grade(mode: Mode) -> Tuple[Fraction, int]:
    """Return ``(level, charge)`` contributed by ``mode`` acting on a weight vector."""
    if mode.kind is Kind.C:
        return Fraction(0), 0
    charge = 1 if mode.kind is Kind.GPLUS else -1 if mode.kind is Kind.GMINUS else 0
    return Fraction(-mode.index2, 2), charge


def add_into(target: Dict, key, coeff) -> None:
    """Accumulate ``coeff`` at ``key``, dropping the entry if it cancels."""
    value = target.get(key, 0) + coeff
    if value:
        target[key] = value
    else:
        target.pop(key, None)


@lru_cache(maxsize=None)
def _bracket(a: Mode, b: Mode) -> Tuple[Tuple[Mode, Fraction], ...]:
    ka, kb = a.kind, b.kind
    if ka is Kind.C or kb is Kind.C:
        return ()
    # Put the pair into the orientation of the defining table, then undo the swap.
    if _table_rank(ka) > _table_rank(kb):
        sign = 1 if (a.is_odd and b.is_odd) else -1
        return tuple((m, sign * x) for m, x in _bracket(b, a))

    out: Dict[Mode, Fraction] = {}
    s2 = a.index2 + b.index2
    if ka is Kind.L and kb is Kind.L:
        m, n = a.index2 // 2, b.index2 // 2
        add_into(out, Mode(Kind.L, s2), Fraction(m - n))
        if s2 == 0:
            add_into(out, CENTRAL, Fraction(m**3 - m, 12))
    elif ka is Kind.L and kb is Kind.T:
        n = b.index2 // 2
        add_into(out, Mode(Kind.T, s2), Fraction(-n))
    elif ka is Kind.L and kb in (Kind.GPLUS, Kind.GMINUS):
        # (m/2 - r) with everything doubled: (index2_a / 2 - index2_b) / 2
        add_into(out, Mode(kb, s2), Fraction(a.index2 - 2 * b.index2, 4))
    elif ka is Kind.T and kb is Kind.T:
        if s2 == 0:
            add_into(out, CENTRAL, Fraction(a.index2 // 2, 3))
    elif ka is Kind.T and kb is Kind.GPLUS:
        add_into(out, Mode(Kind.GPLUS, s2), Fraction(1))
    elif ka is Kind.T and kb is Kind.GMINUS:
        add_into(out, Mode(Kind.GMINUS, s2), Fraction(-1))
    elif ka is Kind.GPLUS and kb is Kind.GMINUS:
        r, s = Fraction(a.index2, 2), Fraction(b.index2, 2)
        add_into(out, Mode(Kind.L, s2), Fraction(2))
        add_into(out, Mode(Kind.T, s2), r - s)
        if s2 == 0:
            add_into(out, CENTRAL, (r * r - Fraction(1, 4)) / 3)
    # {G+,G+} = {G-,G-} = 0 falls through with an empty result.
    return tuple(out.items())


def _table_rank(kind: Kind) -> int:
    return int(kind)


def bracket(a: Mode, b: Mode) -> AlgebraElement:
    """Super-bracket ``[a, b]`` (an anticommutator when both modes are odd)."""
    return dict(_bracket(a, b))


def bracket_linear(x: Mapping[Mode, Fraction], y: Mapping[Mode, Fraction]) -> AlgebraElement:
    """Bilinear extension of :func:`bracket` to algebra elements."""
    out: AlgebraElement = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for m, v in _bracket(a, b):
                add_into(out, m, ca * cb * v)
    return out
