"""Exit criteria, one test per criterion.

Each test prints a ``[PASS]``/``[FAIL]`` line (shown with ``pytest -s`` and in
the terminal summary).  Everything is exact; the only numeric limits are the
wall-clock budgets.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from n2kit.algebra import CENTRAL, Kind, Mode, bracket, bracket_linear
from n2kit.report import payload_bytes
from n2kit.singular import find_singular, predicted_weights, unitary_weight, verify_embedding_data, verify_vsing
from n2kit.spectrum import d_membership, family_one_closed_form, lemma_duv_check, s_set, w_set
from n2kit.verma import Grade, HighestWeight, ModulePresentation, graded_dim_gf, iter_grades, pbw_basis

RESULTS = {}
half = Fraction(1, 2)


class Criterion:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.budget
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {self.title} ({elapsed:.2f}s, budget {self.budget}s)"
        RESULTS[self.number] = line
        print(line)
        if exc_type is None and not ok:
            pytest.fail(f"criterion {self.number} exceeded its {self.budget}s budget ({elapsed:.2f}s)")
        return False


def test_c1_w_cardinality():
    with Criterion(1, "|W| = (m+1)(m+2)/2 for m = 1..12", 1.0):
        for m in range(1, 13):
            assert len(w_set(m)) == (m + 1) * (m + 2) // 2


def test_c2_vacuum_singular_vectors():
    with Criterion(2, "vacuum G+-_{-1/2} singular, dim 1, four central charges", 1.0):
        for c in (Fraction(1), Fraction(3, 2), Fraction(-3), Fraction(7, 11)):
            for s in (1, -1):
                assert find_singular((0, 0, c), Grade(half, s)).solution_dim == 1


@pytest.mark.parametrize(
    "m, cutoff, expected",
    [
        (1, Fraction(5, 2), {Grade(half, 1), Grade(half, -1), Grade(Fraction(2), 0)}),
        (2, Fraction(3), {Grade(half, 1), Grade(half, -1), Grade(Fraction(3), 0)}),
    ],
)
def test_c3_embedding_spot_check(m, cutoff, expected):
    with Criterion(f"3 (m={m})", f"vacuum singular grades up to level {cutoff}", 120.0):
        c = Fraction(3 * m, m + 2)
        M = ModulePresentation.verma((0, 0, c))
        found = set()
        for g in iter_grades(cutoff, (-1, 0, 1)):
            if pbw_basis(g) and find_singular(None, g, presentation=M).solution_dim:
                found.add(g)
        assert found == expected


def test_c4_predicted_weight_concordance():
    with Criterion(4, "m=1 non-vacuum points: solver grades <-> i=1 predicted grades, level <= 3", 300.0):
        for p in w_set(1):
            if (p.h, p.q) == (0, 0):
                continue
            hw = HighestWeight.of(p.h, p.q, 1)
            M = ModulePresentation.verma(hw)
            found = {
                g for g in iter_grades(3, (-1, 0, 1))
                if pbw_basis(g) and find_singular(None, g, presentation=M).solution_dim >= 1
            }
            predicted = {pw.grade for pw in predicted_weights(1, p.j, p.k, 1) if pw.level <= 3}
            assert found <= predicted, (p, found - predicted)
            assert predicted <= found, (p, predicted - found)
            # the same comparison through the packaged report
            assert verify_embedding_data(1, p.j, p.k, 3).passed


def test_c5_vsing():
    with Criterion(5, "v_sing nonzero in V_{c_m}, grade (m+1, 0), paranoid-annihilated, m = 1, 2", 120.0):
        for m in (1, 2):
            cert = verify_vsing(m, paranoid=True)
            assert cert.nonzero_in_quotient
            assert cert.grade == Grade(Fraction(m + 1), 0)
            assert len(cert.audit.checks) > 3
            assert all(r.is_zero() and r.terms == {} for _, r in cert.audit.checks)
            assert cert.passed


def test_c6_lemma_sweep():
    with Criterion(6, "predicted weights never in W, m = 1..6, i <= 50, plus family-1 identity", 10.0):
        for m in range(1, 7):
            rep = lemma_duv_check(m, 50)
            assert rep.violations == []
            assert rep.identity_failures == []
            s = m + 2
            for p in w_set(m):
                h, _ = unitary_weight(m, p.j, p.k)
                for i in range(1, 51):
                    closed = ((p.j - i * s) * (p.k - i * s) - Fraction(1, 4)) / s
                    assert h + i * (i * s - p.j - p.k) == closed == family_one_closed_form(m, p.j, p.k, i)


def _modes(bound):
    out = [CENTRAL]
    for i2 in range(-bound, bound + 1):
        kinds = (Kind.L, Kind.T) if i2 % 2 == 0 else (Kind.GPLUS, Kind.GMINUS)
        out += [Mode(k, i2) for k in kinds]
    return out


def test_c7_engine_soundness():
    with Criterion(7, "super-Jacobi, representation property, PBW = generating function", 60.0):
        rng = random.Random(20240601)
        pool = _modes(8)
        triples = [tuple(rng.choice(pool) for _ in range(3)) for _ in range(4000)]
        triples += [(a, b, c) for a in _modes(3) for b in _modes(3) for c in _modes(3)]
        for a, b, c in triples:
            sign = -1 if (a.is_odd and b.is_odd) else 1
            total = dict(bracket_linear({a: 1}, bracket(b, c)))
            for k, v in bracket_linear(bracket(a, b), {c: 1}).items():
                total[k] = total.get(k, 0) - v
            for k, v in bracket_linear({b: 1}, bracket(a, c)).items():
                total[k] = total.get(k, 0) - sign * v
            assert not any(total.values()), (a, b, c)

        M = ModulePresentation.verma((Fraction(2, 9), Fraction(3, 5), Fraction(-7, 4)))
        ms = _modes(5)
        vectors = [M.highest_weight_vector()] + [
            M.element({w: 1}) for g in iter_grades(3, range(-3, 4)) for w in pbw_basis(g)
        ]
        for v in vectors:
            for a in ms:
                av = M.act(a, v)
                for b in ms:
                    sign = -1 if (a.is_odd and b.is_odd) else 1
                    assert M.act(a, M.act(b, v)) - sign * M.act(b, av) == M.act_linear(bracket(a, b), v)

        for l2 in range(0, 13):
            for s in range(-6, 7):
                g = Grade(Fraction(l2, 2), s)
                assert len(pbw_basis(g)) == graded_dim_gf(g)


def test_c8_nonunitary_sets():
    with Criterion(8, "m = 1/2: S has the 8 listed values; D membership of (1/8,0) and (0,0)", 1.0):
        expected = {Fraction(x) for x in ("0", "1", "2", "3", "-5/2", "-3/2", "-1/2", "1/2")}
        S = s_set("1/2")
        assert set(S) == expected and len(S) == 8
        assert d_membership("1/2", Fraction(1, 8), 0) == (True, Fraction(1, 2))
        assert d_membership("1/2", 0, 0) == (False, None)


def test_c9_determinism():
    with Criterion(9, "two `n2kit verify 1 --format json` runs give identical payloads", 60.0):
        cmd = [sys.executable, "-m", "n2kit", "verify", "1", "--format", "json"]
        runs = [subprocess.run(cmd, capture_output=True, text=True, check=False) for _ in range(2)]
        for r in runs:
            assert r.returncode == 0, r.stderr
            assert json.loads(r.stdout)["verdict"] == "pass"
        assert payload_bytes(runs[0].stdout) == payload_bytes(runs[1].stdout)
        first = json.loads(runs[0].stdout)
        second = json.loads(runs[1].stdout)
        assert json.dumps(first["payload"]) == json.dumps(second["payload"])
