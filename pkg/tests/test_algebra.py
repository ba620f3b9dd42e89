from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from n2kit.algebra import CENTRAL, Gm, Gp, Kind, L, Mode, T, bracket, bracket_linear, mode_grade, parity

half = Fraction(1, 2)


def modes(bound):
    even = st.integers(-bound // 2, bound // 2).map(lambda n: 2 * n)
    odd = st.integers(-(bound + 1) // 2, (bound - 1) // 2).map(lambda n: 2 * n + 1)
    return st.one_of(
        even.map(lambda i: Mode(Kind.L, i)),
        even.map(lambda i: Mode(Kind.T, i)),
        odd.map(lambda i: Mode(Kind.GPLUS, i)),
        odd.map(lambda i: Mode(Kind.GMINUS, i)),
        st.just(CENTRAL),
    )


def all_modes(bound):
    out = [CENTRAL]
    for i2 in range(-bound, bound + 1):
        if i2 % 2 == 0:
            out += [Mode(Kind.L, i2), Mode(Kind.T, i2)]
        else:
            out += [Mode(Kind.GPLUS, i2), Mode(Kind.GMINUS, i2)]
    return out


def test_parity():
    assert parity(L(-1)) == "even"
    assert parity(Gp(-half)) == "odd"
    assert parity(CENTRAL) == "even"


def test_mode_grade():
    assert mode_grade(L(-2)) == (2, 0)
    assert mode_grade(Gp(-half)) == (half, 1)
    assert mode_grade(Gm(Fraction(3, 2))) == (Fraction(-3, 2), -1)
    assert mode_grade(CENTRAL) == (0, 0)


def test_index_parity_is_enforced():
    with pytest.raises(ValueError):
        Mode.make(Kind.L, 1)
    with pytest.raises(ValueError):
        Mode.make(Kind.GPLUS, 2)
    with pytest.raises(ValueError):
        Gp(Fraction(1, 3))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (L(1), L(-1), {L(0): 2}),
        (Gp(half), Gm(-half), {L(0): 2, T(0): 1}),
        (Gp(Fraction(3, 2)), Gm(Fraction(-3, 2)), {L(0): 2, T(0): 3, CENTRAL: Fraction(2, 3)}),
        (Gp(half), Gp(Fraction(3, 2)), {}),
        (L(2), L(-2), {L(0): 4, CENTRAL: Fraction(1, 2)}),
        (T(1), T(-1), {CENTRAL: Fraction(1, 3)}),
        (L(1), T(-1), {T(0): 1}),
        (T(1), Gp(-half), {Gp(half): 1}),
        (T(1), Gm(-half), {Gm(half): -1}),
        (L(1), Gp(-half), {Gp(half): 1}),
        (Gm(half), Gp(-half), {L(0): 2, T(0): -1}),
    ],
)
def test_bracket_table(a, b, expected):
    assert bracket(a, b) == {k: Fraction(v) for k, v in expected.items()}


@pytest.mark.parametrize("a", all_modes(12))
def test_central_element(a):
    assert bracket(a, CENTRAL) == {}
    assert bracket(CENTRAL, a) == {}


def test_super_antisymmetry():
    ms = all_modes(12)
    for a in ms:
        for b in ms:
            sign = -1 if (a.is_odd and b.is_odd) else 1
            ab = bracket(a, b)
            ba = bracket(b, a)
            assert ab == {k: -sign * v for k, v in ba.items()}, (a, b)


def test_grading_additivity():
    ms = all_modes(12)
    for a in ms:
        for b in ms:
            la, ca = mode_grade(a)
            lb, cb = mode_grade(b)
            for m in bracket(a, b):
                if m == CENTRAL:
                    assert (la + lb, ca + cb) == (0, 0)
                else:
                    assert mode_grade(m) == (la + lb, ca + cb)


def _jacobi(a, b, c):
    # [a,[b,c]] - [[a,b],c] - (-1)^{|a||b|} [b,[a,c]]
    sign = -1 if (a.is_odd and b.is_odd) else 1
    lhs = bracket_linear({a: 1}, bracket(b, c))
    r1 = bracket_linear(bracket(a, b), {c: 1})
    r2 = bracket_linear({b: 1}, bracket(a, c))
    out = dict(lhs)
    for k, v in r1.items():
        out[k] = out.get(k, 0) - v
    for k, v in r2.items():
        out[k] = out.get(k, 0) - sign * v
    return {k: v for k, v in out.items() if v}


@settings(max_examples=600, deadline=None)
@given(modes(8), modes(8), modes(8))
def test_super_jacobi(a, b, c):
    assert _jacobi(a, b, c) == {}


def test_super_jacobi_fermionic_triples_exhaustive():
    odd = [m for m in all_modes(5) if m.is_odd]
    for a in odd:
        for b in odd:
            for c in odd:
                assert _jacobi(a, b, c) == {}, (a, b, c)
