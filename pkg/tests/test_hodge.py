"""Filtrations, MHS validation, Deligne bigradings, kappa form."""

import random
import time

import pytest

from corpus import (
    genus2_instance,
    lmhs_dim2,
    pure_dim2,
    random_mhs,
    siegel_dim4,
    tate_dim3,
)
from oracles import lie_grading_independent

from lmhs.errors import InvalidMHS
from lmhs.hodge import (
    DecreasingFiltration,
    IncreasingFiltration,
    MixedHodgeStructure,
    PolarizedLattice,
    deligne_bigrading_from,
    is_r_split,
    kappa,
    validate_mhs,
)
from lmhs.linalg import GMatrix, GScalar, I, ONE, Subspace, ZERO


class TestValidateMHS:
    def test_pure_weight_one_valid(self):
        inst = pure_dim2()
        report = validate_mhs(inst.w, inst.f, inst.lattice)
        assert report.valid

    def test_genus2_valid(self):
        inst = genus2_instance()
        report = validate_mhs(inst.w, inst.f, inst.lattice)
        assert report.valid
        # graded dimensions 1, 2, 1 from bottom up
        dims = [inst.w.graded_dim(l) for l in (0, 1, 2)]
        assert dims == [1, 2, 1]

    def test_constructed_failure_lists_level(self):
        # pure weight 1 with F^1 real: F^1 + conj(F^1) cannot fill V
        q = GMatrix.from_rows([[0, 1], [-1, 0]])
        lattice = PolarizedLattice(dim=2, weight=1, q=q)
        w = IncreasingFiltration(
            2, {0: Subspace.zero(2), 1: Subspace.full(2)}
        )
        f = DecreasingFiltration(
            2,
            {
                0: Subspace.full(2),
                1: Subspace.from_columns(2, [[ONE, ZERO]]),
                2: Subspace.zero(2),
            },
        )
        report = validate_mhs(w, f, lattice)
        assert not report.valid
        assert any(level == 1 and p == 1 for level, p, *_ in report.failures)


class TestDeligneBigrading:
    def test_pure_case_is_hodge_decomposition(self):
        inst = pure_dim2()
        bg = inst.mhs().bigrading()
        assert bg.dims() == {(1, 0): 1, (0, 1): 1}
        fbar = inst.f.conjugate()
        assert bg.piece(1, 0) == inst.f.at(1)
        assert bg.piece(0, 1) == fbar.at(1)

    def test_hodge_tate_diagonal(self):
        inst = siegel_dim4()
        bg = inst.mhs().bigrading()
        assert bg.dims() == {(1, 1): 2, (0, 0): 2}
        assert is_r_split(bg)

    def test_genus2_diamond(self):
        bg = genus2_instance().mhs().bigrading()
        assert bg.dims() == {
            (1, 1): 1,
            (1, 0): 1,
            (0, 1): 1,
            (0, 0): 1,
        }
        assert is_r_split(bg)

    def test_non_split_twist_detected(self):
        # a weight-1 MHS twisted so conj(I^{1,1}) != I^{1,1}
        g = genus2_instance()
        twist = GMatrix.zero(4, 4)
        rows = [[ZERO] * 4 for _ in range(4)]
        rows[3][0] = I  # e1 -> i e4 direction, complex coefficient
        twist = GMatrix(rows)
        from lmhs.linalg import exp_nilpotent

        f = g.f.apply(exp_nilpotent(twist))
        mhs = MixedHodgeStructure(g.lattice, g.w, f)
        assert not is_r_split(mhs.bigrading())

    def test_invalid_input_raises(self):
        q = GMatrix.from_rows([[0, 1], [-1, 0]])
        lattice = PolarizedLattice(dim=2, weight=1, q=q)
        w = IncreasingFiltration(
            2, {0: Subspace.zero(2), 1: Subspace.full(2)}
        )
        f = DecreasingFiltration(
            2,
            {
                0: Subspace.full(2),
                1: Subspace.from_columns(2, [[ONE, ZERO]]),
                2: Subspace.zero(2),
            },
        )
        with pytest.raises(InvalidMHS):
            MixedHodgeStructure(lattice, w, f)


class TestLieBigrading:
    def test_dim2_sl2_shape(self):
        inst = lmhs_dim2()
        lie = inst.mhs().lie_bigrading()
        assert lie.dims() == {(1, 1): 1, (0, 0): 1, (-1, -1): 1}
        assert lie.in_piece(inst.cone.generators[0], -1, -1)

    def test_genus2_shape_and_n_membership(self):
        inst = genus2_instance()
        lie = inst.mhs().lie_bigrading()
        assert sum(lie.dims().values()) == 10
        assert lie.dims()[(-1, -1)] == 1
        assert lie.in_piece(inst.cone.generators[0], -1, -1)

    def test_matches_independent_bruteforce(self):
        for inst in (lmhs_dim2(), genus2_instance(), tate_dim3()):
            mhs = inst.mhs()
            lie = mhs.lie_bigrading()
            g_space, pieces = lie_grading_independent(mhs)
            assert sum(s.dim() for s in pieces.values()) == g_space.dim()
            for key, space in pieces.items():
                assert lie.piece_subspace(*key) == space

    def test_f_perp_nilpotent_and_bracket_closed(self):
        inst = genus2_instance()
        lie = inst.mhs().lie_bigrading()
        from lmhs.linalg import is_nilpotent

        basis = lie.f_perp_basis()
        fperp = lie.f_perp_subspace()
        for x in basis:
            assert is_nilpotent(x)
            for y in basis:
                assert fperp.contains_vector(x.commutator(y).vec())

    def test_exp_log_on_f_perp(self):
        from lmhs.linalg import exp_nilpotent, log_unipotent

        inst = genus2_instance()
        lie = inst.mhs().lie_bigrading()
        rng = random.Random(2)
        basis = lie.f_perp_basis()
        for _ in range(10):
            x = GMatrix.zero(4, 4)
            for b in basis:
                x = x + b.scale(GScalar(rng.randint(-3, 3)))
            assert log_unipotent(exp_nilpotent(x)) == x


class TestKappa:
    def test_elementary_trace(self):
        e12 = GMatrix.from_rows([[0, 1], [0, 0]])
        e21 = GMatrix.from_rows([[0, 0], [1, 0]])
        assert kappa(e12, e21) == GScalar(1)

    def test_orthogonality_on_genus2(self):
        lie = genus2_instance().mhs().lie_bigrading()
        x = lie.piece_basis(1, 1)[0]
        y = lie.piece_basis(-1, 0)[0]
        assert kappa(x, y).is_zero()

    def test_grading_element_positive(self):
        from lmhs.sl2 import grading_element

        for inst in (lmhs_dim2(), genus2_instance(), tate_dim3()):
            lie = inst.mhs().lie_bigrading()
            y = grading_element(lie)
            v = kappa(y, y)
            assert v.is_real() and v.re > 0

    def test_scale_configurable(self):
        e12 = GMatrix.from_rows([[0, 1], [0, 0]])
        e21 = GMatrix.from_rows([[0, 0], [1, 0]])
        assert kappa(e12, e21, GScalar(10)) == GScalar(10)


class TestRandomSuite:
    def test_bigrading_recovers_filtrations_and_lie_identities(self):
        """100 seeded random valid MHS instances: recovery of W and F,
        kappa-orthogonality and bracket compatibility, all exact."""
        rng = random.Random(20260810)
        start = time.time()
        for trial in range(100):
            mhs = random_mhs(rng)
            bg = mhs.bigrading()
            w, f = mhs.w, mhs.f
            for l in range(w.min_level() - 1, w.max_level() + 1):
                assert bg.weight_sum(l) == w.at(l), f"trial {trial} W_{l}"
            for p in range(f.min_level(), f.max_level() + 2):
                assert bg.hodge_sum(p) == f.at(p), f"trial {trial} F^{p}"
            lie = mhs.lie_bigrading()
            keys = list(lie.pieces)
            # direct sum fills g
            assert sum(lie.dims().values()) == mhs.lattice.g_dimension()
            frame = mhs.frame()
            pos = frame.position_key

            def sparse_adapted(mat):
                y = frame.to_adapted(mat)
                return {
                    (i, j): y[i, j]
                    for i in range(y.rows)
                    for j in range(y.cols)
                    if not y[i, j].is_zero()
                }

            tagged = [
                (key, sparse_adapted(mat))
                for key in keys
                for mat in lie.pieces[key]
            ]
            for ka, sa in tagged:
                for kb, sb in tagged:
                    # kappa orthogonality: trace(ab) = 0 off the diagonal
                    if ka[0] + kb[0] != 0 or ka[1] + kb[1] != 0:
                        tr = ZERO
                        for (i, j), va in sa.items():
                            vb = sb.get((j, i))
                            if vb is not None:
                                tr = tr + va * vb
                        assert tr.is_zero()
                    # bracket lands in the summed bidegree
                    key = (ka[0] + kb[0], ka[1] + kb[1])
                    bracket = {}
                    for (i, j), va in sa.items():
                        for (j2, k2), vb in sb.items():
                            if j == j2:
                                bracket[(i, k2)] = (
                                    bracket.get((i, k2), ZERO) + va * vb
                                )
                    for (i, j), vb in sb.items():
                        for (j2, k2), va in sa.items():
                            if j == j2:
                                bracket[(i, k2)] = (
                                    bracket.get((i, k2), ZERO) - vb * va
                                )
                    for (i, j), v in bracket.items():
                        if v.is_zero():
                            continue
                        got = (
                            pos[i][0] - pos[j][0],
                            pos[i][1] - pos[j][1],
                        )
                        assert got == key
        elapsed = time.time() - start
        assert elapsed < 30, f"random suite too slow: {elapsed:.1f}s"
