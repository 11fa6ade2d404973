"""Built-in weight-one fixture: a two-parameter degeneration with Hodge
numbers (2, 2) and rank-one monodromy logarithm.

The normalized period matrix family is

        [ 1        0     ]
        [ 0        1     ]
        [ alpha    lam   ]
        [ nu + l   alpha ]

over coordinates ``(t, w)`` with ``l = log(t)/2 pi i``; the entries
``alpha``, ``lam``, ``nu`` are carried as opaque coordinate symbols with
base point ``(0, i, 0)`` (``Im lam > 0`` is what makes the limit a genuine
polarized limiting mixed Hodge structure, so the base value of ``lam`` is
``i``).  Monodromy preserving the data takes the shape

        gamma(a, b, c) = [ 1  0  0  0 ]
                         [ a  1  0  0 ]
                         [ b  0  1  0 ]
                         [ c  b -a  1 ],   a, b, c integers,

and the entry transformation under the deck action (computed by direct
matrix multiplication and column renormalization) is

        alpha  ->  alpha + b - a*lam
        lam    ->  lam
        nu+l   ->  nu + l + c - a*b - 2*a*alpha + a^2*lam

so ``tau = exp(2 pi i (nu + l))`` picks up the classical theta multiplier
``exp(2 pi i (a^2 lam - 2 a alpha))``.  (A variant of the ``nu`` row with
``+2*a*alpha`` circulates; it is inconsistent with the displayed
``gamma`` under direct multiplication, while the form above matches the
theta multiplier, so the direct computation is taken as ground truth and
both forms are recorded here.)

The invariant form is pinned down by monodromy invariance together with
isotropy of the column span: ``Q(e1, e4) = Q(e2, e3) = 1`` antisymmetrically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hodge import (
    DecreasingFiltration,
    IncreasingFiltration,
    MixedHodgeStructure,
    PolarizedLattice,
)
from .linalg import GMatrix, GScalar, I, ONE, Subspace, ZERO
from .periods import SymbolicFrame, build_lift, _poly
from .symbolic import (
    LogPolynomial,
    TauExpression,
    int_symbol,
    invert_poly_matrix,
    log_symbol,
    matrix_truncate,
    w_symbol,
)
from .weights import NilpotentCone


ALPHA = w_symbol("alpha")
LAM = w_symbol("lam")
NU = w_symbol("nu")
A_INT = int_symbol("ma")
B_INT = int_symbol("mb")
C_INT = int_symbol("mc")


def _e(i, j, value=1):
    rows = [[ZERO] * 4 for _ in range(4)]
    rows[i][j] = GScalar.coerce(value)
    return GMatrix(rows)


@dataclass
class Genus2Fixture:
    lattice: PolarizedLattice
    cone: NilpotentCone
    w: IncreasingFiltration
    f: DecreasingFiltration
    mhs: MixedHodgeStructure
    n_op: GMatrix       # E_{41}, the rank-one monodromy logarithm
    y_op: GMatrix       # diag(1, 0, 0, -1)
    m_op: GMatrix       # E_{14}, the sl2 completion with kappa(M, N) = 1
    a_dir: GMatrix      # E_{31} + E_{42}
    l_dir: GMatrix      # E_{32}
    truncation: int = 6

    # -- monodromy ---------------------------------------------------------

    def gamma(self, a, b, c) -> GMatrix:
        """Integer monodromy gamma(a, b, c) as an exact matrix."""
        rows = [
            [1, 0, 0, 0],
            [a, 1, 0, 0],
            [b, 0, 1, 0],
            [c, b, -a, 1],
        ]
        return GMatrix.from_rows(rows)

    def gamma_symbolic(self) -> GMatrix:
        """gamma with formal integer entries (ma, mb, mc)."""
        a = LogPolynomial.variable(A_INT)
        b = LogPolynomial.variable(B_INT)
        c = LogPolynomial.variable(C_INT)
        one = LogPolynomial.constant(1)
        zero = LogPolynomial()
        return GMatrix(
            [
                [one, zero, zero, zero],
                [a, one, zero, zero],
                [b, zero, one, zero],
                [c, b, -a, one],
            ]
        )

    # -- the period matrix family (direct matrix oracle) --------------------

    def oracle_period_matrix(self) -> GMatrix:
        """The normalized 4x2 period matrix with symbolic entries."""
        alpha = LogPolynomial.variable(ALPHA)
        lam = LogPolynomial.variable(LAM)
        nu_hat = LogPolynomial.variable(NU) + LogPolynomial.variable(
            log_symbol(1)
        )
        one = LogPolynomial.constant(1)
        zero = LogPolynomial()
        return GMatrix(
            [[one, zero], [zero, one], [alpha, lam], [nu_hat, alpha]]
        )

    def act_on_period_matrix(self, gamma: GMatrix, pm: GMatrix) -> GMatrix:
        """Left action plus column renormalization to identity top block."""
        gp = _poly(gamma) @ pm
        top = gp.submatrix(range(2), range(2))
        return gp @ invert_poly_matrix(top)

    def matrix_tau(self, pm: GMatrix) -> TauExpression:
        """``exp(2 pi i * (nu + l))`` read off the (4,1) entry."""
        return TauExpression.from_exponent(
            LogPolynomial.coerce(pm[3, 0])
        )

    # -- the structural frame ------------------------------------------------

    def group_family(self) -> GMatrix:
        """Unipotent family ``U(alpha, lam, nu)`` with ``U(base) = 1`` whose
        flag reproduces the period matrix columns."""
        alpha = LogPolynomial.variable(ALPHA)
        lam_dev = LogPolynomial.variable(LAM) - LogPolynomial.constant(I)
        nu = LogPolynomial.variable(NU)
        d = 4
        acc = _poly(GMatrix.identity(d))
        acc = acc + _poly(self.a_dir).map(lambda e: alpha * e)
        acc = acc + _poly(self.l_dir).map(lambda e: lam_dev * e)
        acc = acc + _poly(self.n_op).map(lambda e: nu * e)
        return acc

    def frame(self, truncation: int | None = None) -> SymbolicFrame:
        order = self.truncation if truncation is None else truncation
        return build_lift(
            self.cone,
            self.f,
            ("group", self.group_family()),
            truncation=order,
            w=self.w,
        )

    def fibre_family(self) -> GMatrix:
        """The extension-data fibre of the family: ``lam`` frozen at its
        base value ``i``, leaving the two unipotent directions.  The cell
        coordinate is exactly polynomial here (no jet truncation)."""
        alpha = LogPolynomial.variable(ALPHA)
        nu = LogPolynomial.variable(NU)
        d = 4
        acc = _poly(GMatrix.identity(d))
        acc = acc + _poly(self.a_dir).map(lambda e: alpha * e)
        acc = acc + _poly(self.n_op).map(lambda e: nu * e)
        return acc

    def fibre_frame(self) -> SymbolicFrame:
        """Exact frame over the fixed-graded-structure slice; the Schubert
        coordinate lands in ``p_W^{-1} /\\ f_perp`` where the level-one
        action laws apply."""
        return build_lift(
            self.cone,
            self.f,
            ("group", self.fibre_family()),
            truncation=None,
            w=self.w,
        )

    def normalize_nu(self, mat: GMatrix) -> GMatrix:
        """Substitute ``nu = 0`` (the coordinate normalization making
        ``tau = t``)."""
        return mat.map(
            lambda e: LogPolynomial.coerce(e).substitute(
                {NU: LogPolynomial.constant(0)}
            )
        )


def builtin_genus2(truncation: int = 6) -> Genus2Fixture:
    """The built-in dim-4, weight-1 fixture with its exact invariant data."""
    q = GMatrix.from_rows(
        [
            [0, 0, 0, 1],
            [0, 0, 1, 0],
            [0, -1, 0, 0],
            [-1, 0, 0, 0],
        ]
    )
    lattice = PolarizedLattice(dim=4, weight=1, q=q, hodge_numbers=(2, 2))
    n_op = _e(3, 0)
    cone = NilpotentCone(lattice, [n_op], label=(1,))
    e1 = [ONE, ZERO, ZERO, ZERO]
    e2 = [ZERO, ONE, ZERO, ZERO]
    e3 = [ZERO, ZERO, ONE, ZERO]
    e4 = [ZERO, ZERO, ZERO, ONE]
    w0 = Subspace.from_columns(4, [e4])
    w1 = Subspace.from_columns(4, [e2, e3, e4])
    w = IncreasingFiltration(4, {-1: Subspace.zero(4), 0: w0, 1: w1, 2: Subspace.full(4)})
    f1 = Subspace.from_columns(4, [e1, [ZERO, ONE, I, ZERO]])
    f = DecreasingFiltration(
        4, {0: Subspace.full(4), 1: f1, 2: Subspace.zero(4)}
    )
    mhs = MixedHodgeStructure(lattice, w, f)
    y_op = GMatrix.from_rows(
        [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1]]
    )
    m_op = _e(0, 3)
    a_dir = _e(2, 0) + _e(3, 1)
    l_dir = _e(2, 1)
    return Genus2Fixture(
        lattice=lattice,
        cone=cone,
        w=w,
        f=f,
        mhs=mhs,
        n_op=n_op,
        y_op=y_op,
        m_op=m_op,
        a_dir=a_dir,
        l_dir=l_dir,
        truncation=truncation,
    )
