"""Core exact linear algebra: scalars, canonical subspaces, solving."""

import random
from fractions import Fraction

import pytest

from lmhs.errors import DimensionMismatch
from lmhs.linalg import (
    GMatrix,
    GScalar,
    I,
    NoSolution,
    ONE,
    Subspace,
    ZERO,
    exp_nilpotent,
    format_scalar,
    gram_definiteness,
    gram_is_positive_definite,
    inverse,
    kernel,
    log_unipotent,
    parse_scalar,
    solve_linear,
    subspace_algebra,
)


def rand_scalar(rng, span=6):
    return GScalar(
        Fraction(rng.randint(-span, span), rng.randint(1, 4)),
        Fraction(rng.randint(-span, span), rng.randint(1, 4)),
    )


def rand_subspace(rng, ambient, count):
    cols = [
        [rand_scalar(rng) for _ in range(ambient)] for _ in range(count)
    ]
    return Subspace.from_columns(ambient, cols)


class TestGScalar:
    def test_field_arithmetic(self):
        a = GScalar(Fraction(3, 2), Fraction(-1, 3))
        b = GScalar(Fraction(-2, 5), Fraction(7))
        assert (a * b) / b == a
        assert a + b - b == a
        assert a * (ONE / a) == ONE

    def test_conjugation_involution(self):
        a = GScalar(2, -3)
        assert a.conjugate().conjugate() == a
        assert (a * a.conjugate()).is_real()

    def test_parse_format_roundtrip(self):
        rng = random.Random(7)
        for _ in range(200):
            s = rand_scalar(rng)
            assert parse_scalar(format_scalar(s)) == s
        assert format_scalar(ZERO) == "0"
        assert parse_scalar("1/2*i") == GScalar(0, Fraction(1, 2))
        assert parse_scalar("-3/4+i") == GScalar(Fraction(-3, 4), 1)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO


class TestSubspace:
    def test_sum_of_coordinate_lines(self):
        a = Subspace.from_columns(2, [[ONE, ZERO]])
        b = Subspace.from_columns(2, [[ZERO, ONE]])
        assert a.sum(b) == Subspace.full(2)
        assert subspace_algebra(a, b, "sum") == Subspace.full(2)

    def test_intersection_identity_case(self):
        s = Subspace.from_columns(3, [[ONE, I, ZERO]])
        assert subspace_algebra(Subspace.full(3), s, "intersect") == s

    def test_contains_echelon_comparison(self):
        diag = Subspace.from_columns(2, [[ONE, ONE]])
        e1 = Subspace.from_columns(2, [[ONE, ZERO]])
        assert not subspace_algebra(diag, e1, "contains")
        assert subspace_algebra(diag, diag, "equals")

    def test_canonicalization_is_representation_equality(self):
        rng = random.Random(3)
        for _ in range(50):
            ambient = rng.randint(1, 6)
            s = rand_subspace(rng, ambient, rng.randint(0, ambient))
            # rebuild from a scrambled spanning set
            cols = s.basis_columns()
            scrambled = []
            for _ in range(2 * len(cols)):
                v = [ZERO] * ambient
                for c in cols:
                    f = rand_scalar(rng, 3)
                    v = [x + f * y for x, y in zip(v, c)]
                scrambled.append(v)
            rebuilt = Subspace.from_columns(ambient, scrambled + cols)
            assert rebuilt == s
            assert rebuilt.basis == s.basis

    def test_modular_law_random(self):
        rng = random.Random(11)
        for _ in range(60):
            ambient = rng.randint(1, 10)
            a = rand_subspace(rng, ambient, rng.randint(0, ambient))
            b = rand_subspace(rng, ambient, rng.randint(0, ambient))
            lhs = a.dim() + b.dim()
            rhs = a.sum(b).dim() + a.intersect(b).dim()
            assert lhs == rhs

    def test_conjugate_double_application(self):
        rng = random.Random(5)
        for _ in range(40):
            ambient = rng.randint(1, 8)
            s = rand_subspace(rng, ambient, rng.randint(0, ambient))
            assert s.conjugate().conjugate() == s
        real = Subspace.from_columns(3, [[ONE, ONE, ZERO]])
        assert real.conjugate() == real
        twisted = Subspace.from_columns(2, [[ONE, I]])
        assert twisted.conjugate() == Subspace.from_columns(2, [[ONE, -I]])

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Subspace.full(2).sum(Subspace.full(3))


class TestSolve:
    def test_identity_system(self):
        res = solve_linear(
            GMatrix.identity(2), GMatrix.from_columns([[ONE, I]])
        )
        assert res.solution.column(0) == (ONE, I)
        assert res.kernel.dim() == 0

    def test_zero_system(self):
        res = solve_linear(GMatrix.zero(2, 2), GMatrix.zero(2, 1))
        assert res.kernel == Subspace.full(2)

    def test_underdetermined(self):
        a = GMatrix.from_rows([[1, 1]])
        res = solve_linear(a, GMatrix.from_rows([[2]]))
        assert res.solution.column(0) == (GScalar(2), ZERO)
        assert res.kernel == Subspace.from_columns(2, [[ONE, -ONE]])

    def test_exactness_random(self):
        rng = random.Random(17)
        for _ in range(40):
            n, m = rng.randint(1, 5), rng.randint(1, 5)
            a = GMatrix(
                [[rand_scalar(rng) for _ in range(m)] for _ in range(n)]
            )
            b = GMatrix([[rand_scalar(rng)] for _ in range(n)])
            res = solve_linear(a, b)
            if isinstance(res, NoSolution):
                y = res.certificate
                ya = [
                    sum((y[i] * a[i, j] for i in range(n)), ZERO)
                    for j in range(m)
                ]
                yb = sum((y[i] * b[i, 0] for i in range(n)), ZERO)
                assert all(x.is_zero() for x in ya) and not yb.is_zero()
            else:
                assert a @ res.solution == b
                for k in res.kernel.basis_columns():
                    img = a @ GMatrix.from_columns([list(k)])
                    assert img.is_zero()

    def test_inverse(self):
        a = GMatrix.from_rows([[1, 2], [3, 5]])
        assert a @ inverse(a) == GMatrix.identity(2)
        with pytest.raises(ZeroDivisionError):
            inverse(GMatrix.from_rows([[1, 2], [2, 4]]))


class TestExpLog:
    def test_exp_log_mutually_inverse(self):
        rng = random.Random(23)
        for _ in range(25):
            n = rng.randint(2, 5)
            entries = [[ZERO] * n for _ in range(n)]
            for i in range(n):
                for j in range(i):
                    entries[i][j] = rand_scalar(rng, 3)
            x = GMatrix(entries)
            u = exp_nilpotent(x)
            assert log_unipotent(u) == x
            assert exp_nilpotent(log_unipotent(u)) == u

    def test_exp_of_zero(self):
        assert exp_nilpotent(GMatrix.zero(3, 3)) == GMatrix.identity(3)


class TestHermitianDefiniteness:
    def test_positive_definite(self):
        h = GMatrix.from_rows([[2, 1], [1, 2]])
        ok, witness = gram_is_positive_definite(h)
        assert ok and witness is None

    def test_indefinite_with_witness(self):
        h = GMatrix.from_rows([[1, 0], [0, -1]])
        ok, witness = gram_is_positive_definite(h)
        assert not ok
        # witness u has u* H u <= 0
        val = sum(
            (
                witness[i].conjugate() * h[i, j] * witness[j]
                for i in range(2)
                for j in range(2)
            ),
            ZERO,
        )
        assert val.is_real() and val.re <= 0

    def test_zero_diagonal_off_diagonal_witness(self):
        h = GMatrix.from_rows([["0", "i"], ["-i", "0"]])
        ok, witness = gram_is_positive_definite(h)
        assert not ok and witness is not None

    def test_hermitian_complex_case(self):
        h = GMatrix(
            [
                [GScalar(2), GScalar(0, 1)],
                [GScalar(0, -1), GScalar(2)],
            ]
        )
        assert gram_definiteness(h) == "positive"
        assert gram_definiteness(h.scale(GScalar(-1))) == "negative"

    def test_empty_form_vacuous(self):
        ok, witness = gram_is_positive_definite(GMatrix.zero(0, 0))
        assert ok and witness is None
