"""Symbolic period matrices: local lifts, Schubert-cell coordinates,
horizontal coefficients, tau functions, monodromy factorization and the
logarithmic differential map.

A ``SymbolicFrame`` is the exact model of a local lift

    lift(t, w) = exp( sum_i l_i N_i ) * xi(t, w),    xi in exp(f_perp),

with polynomial ``xi`` data (finite jets; the truncation order is part of
the frame).  The frame matrix is unipotent and strictly lower triangular in
the bigrading-adapted basis, so logs and inverses are finite sums and every
identity below is checked coefficientwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BasisNotSpanning,
    InvariantError,
    NotInCell,
    NotInStabilizer,
    XiNotInFperp,
)
from .hodge import (
    DecreasingFiltration,
    IncreasingFiltration,
    MixedHodgeStructure,
    PolarizedLattice,
    kappa,
)
from .linalg import (
    GMatrix,
    GScalar,
    I,
    NoSolution,
    ONE,
    Subspace,
    ZERO,
    exp_nilpotent,
    log_unipotent,
    solve_linear,
)
from .symbolic import (
    LogPolynomial,
    Symbol,
    TWO_PI_I,
    TauExpression,
    int_symbol,
    invert_poly_matrix,
    log_symbol,
    matrix_of_scalars,
    matrix_shift_log,
    matrix_substitute,
    matrix_truncate,
    poly_matrix,
    t_symbol,
    w_symbol,
)
from .weights import (
    NilpotentCone,
    cone_weight_filtration,
    reduced_limit,
)


def _poly(mat: GMatrix) -> GMatrix:
    """Entrywise lift of GScalar matrices into the polynomial ring."""
    if mat.rows and isinstance(mat[0, 0], LogPolynomial):
        return mat
    return matrix_of_scalars(mat)


def log_term(cone: NilpotentCone) -> GMatrix:
    """``sum_i l_i N_i`` as a polynomial matrix (generators indexed from 1)."""
    d = cone.lattice.dim
    acc = _poly(GMatrix.zero(d, d))
    for pos, n_i in enumerate(cone.generators, start=1):
        li = LogPolynomial.variable(log_symbol(pos))
        acc = acc + _poly(n_i).map(lambda e: li * e)
    return acc


def canonical_cell_representative(
    mhs: MixedHodgeStructure, u_poly: GMatrix, truncation: int | None
) -> GMatrix:
    """The unique ``X in f_perp`` (polynomial/jet entries) with
    ``exp(X) F = u F`` as flags.

    Solved blockwise in the adapted basis; raises ``NotInCell`` when a pivot
    block is not invertible (the flag leaves the cell).
    """
    frame = mhs.frame()
    d = frame.dim()
    t_p = _poly(frame.t)
    t_inv_p = _poly(frame.t_inv)
    up = matrix_truncate(t_inv_p @ _poly(u_poly) @ t_p, truncation)
    plevels = [key[0] for key in frame.position_key]
    g_cols = [None] * d
    for p in sorted(set(plevels), reverse=True):
        positions = [i for i in range(d) if plevels[i] >= p]
        block = up.submatrix(range(d), positions)
        upper = up.submatrix(positions, positions)
        try:
            upper_inv = invert_poly_matrix(upper, truncation)
        except (ZeroDivisionError, InvariantError) as exc:
            raise NotInCell(
                f"pivot block at level p={p} is singular"
            ) from exc
        for local, v in enumerate(positions):
            if plevels[v] != p:
                continue
            coeffs = [upper_inv[r, local] for r in range(len(positions))]
            col = [
                sum_poly(
                    block[r, c] * coeffs[c] for c in range(len(positions))
                )
                for r in range(d)
            ]
            g_cols[v] = col
    g_adapted = matrix_truncate(
        GMatrix.from_columns(g_cols), truncation
    )
    x_adapted = log_unipotent(g_adapted)
    x = matrix_truncate(t_p @ x_adapted @ t_inv_p, truncation)
    return x


def sum_poly(items):
    acc = None
    for item in items:
        acc = item if acc is None else acc + item
    return acc if acc is not None else LogPolynomial()


class SymbolicFrame:
    """Local lift data: cone, limit filtration, canonical ``xi`` and the
    assembled polynomial matrix ``exp(sum l_i N_i) xi``."""

    def __init__(
        self,
        mhs: MixedHodgeStructure,
        cone: NilpotentCone,
        xi: GMatrix,
        truncation: int | None,
    ):
        self.mhs = mhs
        self.cone = cone
        self.xi = xi
        self.truncation = truncation
        self.lift = matrix_truncate(
            exp_nilpotent(log_term(cone)) @ xi, truncation
        )
        self._x = None

    # -- coordinates ---------------------------------------------------------

    def x(self) -> GMatrix:
        """Schubert-cell coordinate: matrix log of the unipotent lift."""
        if self._x is None:
            self._x = matrix_truncate(
                log_unipotent(self.lift), self.truncation
            )
        return self._x

    def x_tilde(self) -> GMatrix:
        return matrix_truncate(
            self.x() - log_term(self.cone), self.truncation
        )

    def w_symbols(self):
        syms = set()
        for row in self.xi.entries:
            for e in row:
                for s in LogPolynomial.coerce(e).symbols():
                    if s.kind in ("w", "int"):
                        syms.add(s)
        return sorted(syms)

    def period_matrix(self, p: int | None = None, normalize=True) -> GMatrix:
        """Columns: the lift applied to the echelon basis of ``F^p``
        (default: the deepest nonzero step), column-reduced so the top block
        is the identity (the classical normalized period matrix)."""
        f = self.mhs.f
        if p is None:
            p = f.max_level()
        basis = f.at(p).basis
        pm = self.lift @ _poly(basis)
        if not normalize:
            return pm
        dp = basis.cols
        top = pm.submatrix(range(dp), range(dp))
        try:
            inv = invert_poly_matrix(top, self.truncation)
        except (ZeroDivisionError, InvariantError) as exc:
            raise NotInCell("top block of the period matrix is singular") from exc
        return matrix_truncate(pm @ inv, self.truncation)

    def restrict(self, indices) -> GMatrix:
        """``xi`` restricted to the stratum ``{t_i = 0, i in indices}``."""
        return self.xi.map(
            lambda e: LogPolynomial.coerce(e).restrict_t0(indices)
        )


def build_lift(
    cone: NilpotentCone,
    f: DecreasingFiltration,
    xi_data,
    truncation: int | None = None,
    w: IncreasingFiltration | None = None,
    seed: int = 0,
) -> SymbolicFrame:
    """Assemble the symbolic local lift.

    ``xi_data`` is either ``("log", X)`` with ``X`` an f_perp-valued
    polynomial matrix, or ``("group", U)`` with ``U`` a unipotent polynomial
    family whose flag ``U F`` is canonicalized into the cell.
    """
    n = cone.lattice.weight
    if w is None:
        w, _ = cone_weight_filtration(cone, n, seed=seed)
    mhs = MixedHodgeStructure(cone.lattice, w, f)
    frame_adapter = mhs.frame()
    form, payload = xi_data
    payload = _poly(payload)
    for row in payload.entries:
        for e in row:
            if not LogPolynomial.coerce(e).is_single_valued():
                raise XiNotInFperp("xi data must be single-valued (no logs)")
    if form == "log":
        if not frame_adapter.supported_on(payload, lambda p, q: p < 0):
            raise XiNotInFperp("log xi has components outside f_perp")
        xi = matrix_truncate(exp_nilpotent(payload), truncation)
    elif form == "group":
        x_tilde = canonical_cell_representative(mhs, payload, truncation)
        if not frame_adapter.supported_on(x_tilde, lambda p, q: p < 0):
            raise XiNotInFperp(
                "canonical representative has components outside f_perp"
            )
        xi = matrix_truncate(exp_nilpotent(x_tilde), truncation)
    else:
        raise InvariantError(f"unknown xi data form {form!r}")
    return SymbolicFrame(mhs, cone, xi, truncation)


def schubert_coordinate(frame: SymbolicFrame) -> GMatrix:
    """``X`` with ``exp(X) F`` the frame; also certifies the single-valued
    horizontal components of ``X - sum l_i N_i``."""
    x = frame.x()
    adapter = frame.mhs.frame()
    if not adapter.supported_on(x, lambda p, q: p < 0):
        raise NotInCell("lift log has components outside f_perp")
    xt = frame.x_tilde()
    for (p, q) in {k for k in _component_keys(adapter, xt) if k[0] == -1}:
        comp = adapter.component(xt, p, q)
        for row in comp.entries:
            for e in row:
                if not LogPolynomial.coerce(e).is_single_valued():
                    raise NotInCell(
                        f"horizontal component ({p},{q}) is multivalued"
                    )
    return x


def _component_keys(adapter, mat):
    keys = set()
    y = adapter.to_adapted(mat)
    n = adapter.dim()
    for i in range(n):
        for j in range(n):
            if y[i, j].is_zero():
                continue
            ki, kj = adapter.position_key[i], adapter.position_key[j]
            keys.add((ki[0] - kj[0], ki[1] - kj[1]))
    return keys


def filtration_coordinate(
    mhs: MixedHodgeStructure, f_new: DecreasingFiltration
) -> GMatrix:
    """Numeric Schubert coordinate of a filtration in general position with
    the reference data: the unique ``X in f_perp`` with ``exp(X) F = f_new``."""
    frame = mhs.frame()
    d = frame.dim()
    plevels = [key[0] for key in frame.position_key]
    g_cols = [None] * d
    for p in sorted(set(plevels), reverse=True):
        positions = [i for i in range(d) if plevels[i] >= p]
        step = f_new.at(p)
        if step.dim() != len(positions):
            raise NotInCell(
                f"flag dimension mismatch at level p={p}",
                found=step.dim(),
                expected=len(positions),
            )
        basis_adapted = frame.t_inv @ step.basis
        upper = basis_adapted.submatrix(positions, range(step.dim()))
        for v in positions:
            if plevels[v] != p:
                continue
            rhs = [[ONE if positions[r] == v else ZERO] for r in range(len(positions))]
            res = solve_linear(upper, GMatrix(rhs))
            if isinstance(res, NoSolution) or res.kernel.dim() != 0:
                raise NotInCell(
                    f"flag is not transverse at level p={p}"
                )
            col = (basis_adapted @ res.solution).column(0)
            g_cols[v] = col
    g = GMatrix.from_columns(g_cols)
    x_adapted = log_unipotent(g)
    if any(
        not x_adapted[i, j].is_zero()
        for i in range(d)
        for j in range(d)
        if plevels[i] >= plevels[j]
    ):
        raise NotInCell("coordinate is not strictly lower in the p-grading")
    return frame.t @ x_adapted @ frame.t_inv


# -- horizontal coefficients -------------------------------------------------


@dataclass
class HorizontalBasis:
    """Basis of ``g^{1,*}`` split into the annihilator of the cone and an
    integrally-normalized complement."""

    smooth: list      # (matrix, tag)
    logarithmic: list  # (matrix, tag, {i: kappa(M, N_i)})


def horizontal_basis(
    lie, cone: NilpotentCone, scale: GScalar = ONE, positivity_helper=None
) -> HorizontalBasis:
    """Select a basis of ``g^{1,*}``.

    Elements pairing to zero with every generator span the annihilator
    (smooth coefficients); the complement is scaled so every pairing is an
    integer, sign-flipped (or shifted by ``positivity_helper`` when given)
    towards nonnegative pairings.
    """
    d = lie.lattice.dim
    all_mats = [
        (mat, (p, q))
        for (p, q), mats in lie.pieces.items()
        if p == 1
        for mat in mats
    ]
    if not all_mats:
        return HorizontalBasis(smooth=[], logarithmic=[])
    cols = []
    for mat, _ in all_mats:
        cols.append([kappa(mat, n_i, scale) for n_i in cone.generators])
    pairing = GMatrix.from_columns(cols)
    ann_coeffs = solve_linear(
        pairing, GMatrix.zero(len(cone.generators), 0)
    ).kernel
    smooth = []
    span = Subspace.zero(d * d)
    for coeffs in ann_coeffs.basis_columns():
        acc = GMatrix.zero(d, d)
        tag = None
        for c, (mat, mtag) in zip(coeffs, all_mats):
            if c.is_zero():
                continue
            acc = acc + mat.scale(c)
            tag = mtag if tag is None else tag
        smooth.append((acc, tag))
        span = span.sum(Subspace.from_columns(d * d, [acc.vec()]))
    logarithmic = []
    for mat, tag in all_mats:
        if span.contains_vector(mat.vec()):
            continue
        values = [kappa(mat, n_i, scale) for n_i in cone.generators]
        denom = 1
        for v in values:
            if not v.is_real():
                raise InvariantError("pairing with a generator is not real")
            denom = denom * v.re.denominator // _gcd(denom, v.re.denominator)
        chosen = mat.scale(GScalar(denom))
        ints = [Fraction(denom) * v.re for v in values]
        if all(x <= 0 for x in ints) and any(x < 0 for x in ints):
            chosen = chosen.scale(GScalar(-1))
            ints = [-x for x in ints]
        if positivity_helper is not None and any(x < 0 for x in ints):
            helper_vals = [
                kappa(positivity_helper, n_i, scale).re
                for n_i in cone.generators
            ]
            if all(h > 0 for h in helper_vals):
                shift = max(
                    -(x // h) for x, h in zip(ints, helper_vals) if x < 0
                )
                chosen = chosen + positivity_helper.scale(GScalar(shift))
                ints = [
                    x + shift * h for x, h in zip(ints, helper_vals)
                ]
        logarithmic.append(
            (
                chosen,
                tag,
                {
                    i: int(x)
                    for i, x in zip(cone.label, ints)
                },
            )
        )
        span = span.sum(Subspace.from_columns(d * d, [chosen.vec()]))
    if span.dim() != len(all_mats):
        raise BasisNotSpanning("selected basis does not span g^{1,*}")
    return HorizontalBasis(smooth=smooth, logarithmic=logarithmic)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def horizontal_coefficients(
    x: GMatrix, basis: HorizontalBasis, scale: GScalar = ONE
):
    """``eps = kappa(M, X)`` for every basis element; smooth ones must be
    log-free, logarithmic ones have ``l_i`` coefficient ``kappa(M, N_i)``."""
    table = []
    for mat, tag in basis.smooth:
        eps = LogPolynomial.coerce(kappa(_poly(mat), x, scale))
        if not eps.is_single_valued():
            raise InvariantError("smooth coefficient is multivalued")
        table.append({"kind": "smooth", "tag": tag, "eps": eps})
    for mat, tag, ints in basis.logarithmic:
        eps = LogPolynomial.coerce(kappa(_poly(mat), x, scale))
        table.append(
            {"kind": "log", "tag": tag, "eps": eps, "kappas": ints}
        )
    return table


def tau(
    m: GMatrix,
    frame_or_x,
    cone: NilpotentCone,
    scale: GScalar = ONE,
) -> TauExpression:
    """The single-valued exponential ``exp(2 pi i kappa(M, X))`` with its
    ``t``-monomial divisor ``(kappa(M, N_i))_i``."""
    x = frame_or_x.x() if isinstance(frame_or_x, SymbolicFrame) else frame_or_x
    eps = LogPolynomial.coerce(kappa(_poly(m), x, scale))
    expr = TauExpression.from_exponent(eps)  # NotIntegral on bad pairings
    expected = {}
    for pos, n_i in enumerate(cone.generators, start=1):
        v = kappa(m, n_i, scale)
        if not v.is_rational_integer():
            raise InvariantError("divisor pairing is not an integer")
        if int(v.re):
            expected[pos] = int(v.re)
    if dict(expr.monomial) != expected:
        raise InvariantError(
            "tau divisor does not match the generator pairings",
            divisor=dict(expr.monomial),
            expected=expected,
        )
    return expr


def divisor_of_tau(expr: TauExpression) -> dict:
    return expr.divisor()


# -- monodromy ----------------------------------------------------------------


@dataclass
class MonodromyElement:
    gamma: GMatrix
    alpha: GMatrix
    a_log: GMatrix
    beta: GMatrix
    beta0: GMatrix
    b_log: GMatrix
    c_log: GMatrix | None
    unipotent: bool


def factor_monodromy(
    gamma: GMatrix, mhs: MixedHodgeStructure, truncation: int | None = None
) -> MonodromyElement:
    """Factor ``gamma = alpha * beta0 * exp(b)`` with ``alpha`` in
    ``exp(m /\\ f_perp)``, ``beta0`` bigrading-preserving and ``b`` in
    ``m^{-1} /\\ f``.

    ``gamma`` must preserve Q and stabilize the reduced limit and its
    conjugate; anything else raises ``NotInStabilizer``.
    """
    lattice = mhs.lattice
    adapter = mhs.frame()
    gp = _poly(gamma)
    qp = _poly(lattice.q)
    if not (gp.transpose() @ qp @ gp - qp).is_zero():
        raise NotInStabilizer("gamma does not preserve Q")
    from .linalg import InvalidNilpotency

    try:
        c_log = log_unipotent(gp)
        unipotent = True
    except InvalidNilpotency:
        c_log = None
        unipotent = False
    if unipotent:
        if not adapter.supported_on(
            c_log, lambda p, q: p <= 0 and q <= 0 and (p, q) != (0, 0)
        ):
            raise NotInStabilizer(
                "log gamma is not supported on m^{-1}; "
                "gamma does not stabilize the reduced limit pair"
            )
    else:
        numeric = all(
            isinstance(e, GScalar) for row in gamma.entries for e in row
        )
        if not numeric:
            raise NotInStabilizer(
                "non-unipotent symbolic monodromy is not supported"
            )
        f_inf = reduced_limit(mhs)
        for p in f_inf.support():
            step = f_inf.at(p)
            if step.apply(gamma) != step:
                raise NotInStabilizer("gamma does not stabilize F_infinity")
            if step.conjugate().apply(gamma) != step.conjugate():
                raise NotInStabilizer(
                    "gamma does not stabilize conj(F_infinity)"
                )
    a_log = canonical_cell_representative(mhs, gp, truncation)
    if not adapter.supported_on(a_log, lambda p, q: p < 0 and q <= 0):
        raise NotInStabilizer(
            "cell coordinate of gamma.F leaves m /\\ f_perp"
        )
    alpha = exp_nilpotent(a_log)
    beta = invert_poly_matrix(alpha, truncation) @ gp
    beta = matrix_truncate(beta, truncation)
    beta0 = adapter.mask(beta, lambda p, q: (p, q) == (0, 0))
    eb = matrix_truncate(
        invert_poly_matrix(beta0, truncation) @ beta, truncation
    )
    b_log = log_unipotent(eb)
    if not adapter.supported_on(b_log, lambda p, q: p == 0 and q < 0):
        raise NotInStabilizer("beta factor log leaves m^{-1} /\\ f")
    return MonodromyElement(
        gamma=gp,
        alpha=alpha,
        a_log=a_log,
        beta=beta,
        beta0=beta0,
        b_log=b_log,
        c_log=c_log,
        unipotent=unipotent,
    )


def monodromy_action(
    me: MonodromyElement,
    x: GMatrix,
    mhs: MixedHodgeStructure,
    truncation: int | None = None,
) -> GMatrix:
    """Transformed Schubert coordinate: ``X' = log(alpha * beta e^X beta^{-1})``."""
    beta_inv = invert_poly_matrix(me.beta, truncation)
    conj = matrix_truncate(me.beta @ exp_nilpotent(x) @ beta_inv, truncation)
    total = matrix_truncate(me.alpha @ conj, truncation)
    return matrix_truncate(log_unipotent(total), truncation)


def multiplier(
    me: MonodromyElement,
    m: GMatrix,
    x: GMatrix,
    mhs: MixedHodgeStructure,
    scale: GScalar = ONE,
    truncation: int | None = None,
) -> TauExpression:
    """``e^M_gamma`` as the exponent difference ``kappa(M, X.gamma) -
    kappa(M, X)``."""
    x_new = monodromy_action(me, x, mhs, truncation)
    diff = LogPolynomial.coerce(
        kappa(_poly(m), x_new - x, scale)
    )
    return TauExpression.from_exponent(diff)


def multiplier_closed_form(
    me: MonodromyElement,
    m: GMatrix,
    x: GMatrix,
    mhs: MixedHodgeStructure,
    scale: GScalar = ONE,
) -> TauExpression:
    """The level-one closed form
    ``exp 2 pi i kappa(M, a^{-1,-1} + [b^{0,-1}, X^{-1,0}])`` for M in
    g^{1,1}."""
    adapter = mhs.frame()
    a_mm = adapter.component(me.a_log, -1, -1)
    b_0m = adapter.component(me.b_log, 0, -1)
    x_m0 = adapter.component(x, -1, 0)
    inner = a_mm + (b_0m @ x_m0 - x_m0 @ b_0m)
    val = LogPolynomial.coerce(kappa(_poly(m), inner, scale))
    return TauExpression.from_exponent(val)


# -- IPR and logarithmic differentials ----------------------------------------


@dataclass
class IprReport:
    holds: bool
    violations: list
    level_constant: bool | None
    centralizer_ok: bool | None


def ipr_check(
    frame: SymbolicFrame,
    restrict_indices=(),
    level: int | None = None,
) -> IprReport:
    """Verify horizontality ``(xi^{-1} d xi)^{p,q} = 0`` for p <= -2 as a
    symbolic identity, in the log frame ``{t_i d/dt_i, d/dw}``.

    With ``restrict_indices`` the check runs on the stratum ``t_i = 0``; a
    ``level`` additionally asserts that the ``p+q = -level-1, p <= -2``
    components of ``log xi`` are constant there.
    """
    adapter = frame.mhs.frame()
    xi = (
        frame.restrict(restrict_indices) if restrict_indices else frame.xi
    )
    xi_inv = invert_poly_matrix(xi, frame.truncation)
    violations = []
    k = len(frame.cone)
    directions = []
    for i in range(1, k + 1):
        if i in set(restrict_indices):
            continue
        directions.append(
            (f"t{i}*d/dt{i}", lambda e, i=i: LogPolynomial.coerce(e).dlog_t(i))
        )
    for s in sorted(
        {
            sym
            for row in xi.entries
            for e in row
            for sym in LogPolynomial.coerce(e).symbols()
            if sym.kind == "w"
        }
    ):
        directions.append(
            (f"d/d{s.name}", lambda e, s=s: LogPolynomial.coerce(e).derivative(s))
        )
    for name, op in directions:
        d_xi = xi.map(op)
        eta = matrix_truncate(xi_inv @ d_xi, frame.truncation)
        for (p, q) in sorted(_component_keys(adapter, eta)):
            if p <= -2:
                violations.append({"direction": name, "component": (p, q)})
    level_constant = None
    centralizer_ok = None
    if restrict_indices:
        log_xi = log_unipotent(xi)
        centralizer_ok = True
        for i in restrict_indices:
            n_i = _poly(frame.cone.generators[i - 1])
            if not (log_xi @ n_i - n_i @ log_xi).is_zero():
                centralizer_ok = False
        if level is not None:
            level_constant = True
            for (p, q) in sorted(_component_keys(adapter, log_xi)):
                if p + q == -level - 1 and p <= -2:
                    comp = adapter.component(log_xi, p, q)
                    for row in comp.entries:
                        for e in row:
                            pe = LogPolynomial.coerce(e)
                            if not (pe - LogPolynomial.constant(
                                pe.constant_term()
                            )).is_zero():
                                level_constant = False
    return IprReport(
        holds=not violations,
        violations=violations,
        level_constant=level_constant,
        centralizer_ok=centralizer_ok,
    )


def rank_generic(mat: GMatrix) -> int:
    """Rank of a polynomial matrix over the rational function field
    (fraction-free elimination)."""
    rows = [
        [LogPolynomial.coerce(e) for e in row] for row in mat.entries
    ]
    rank = 0
    ncols = mat.cols
    used = set()
    for c in range(ncols):
        pivot = None
        for r in range(len(rows)):
            if r in used:
                continue
            if not rows[r][c].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        used.add(pivot)
        rank += 1
        pv = rows[pivot][c]
        for r in range(len(rows)):
            if r == pivot:
                continue
            f = rows[r][c]
            if f.is_zero():
                continue
            rows[r] = [
                a * pv - b * f for a, b in zip(rows[r], rows[pivot])
            ]
    return rank


@dataclass
class TorelliReport:
    injective: bool
    w_block_rank: int
    w_directions: int
    generators_independent: bool
    dni_verified: bool
    table: list


def log_differential_map(
    frame: SymbolicFrame,
    basis: HorizontalBasis,
    scale: GScalar = ONE,
) -> TorelliReport:
    """Evaluate the differentials of the horizontal coefficients on the log
    frame at ``t = 0``; certify ``d eps(t_i d/dt_i)|_0 = kappa(M, N_i)/2 pi i``
    and decide local Torelli (w-block rank + generator independence)."""
    x = frame.x()
    coeffs = horizontal_coefficients(x, basis, scale)
    k = len(frame.cone)
    all_t = list(range(1, k + 1))
    w_syms = [s for s in frame.w_symbols() if s.kind == "w"]
    inv2pi = LogPolynomial.variable(TWO_PI_I, -1)
    table = []
    dni_verified = True
    w_rows = []
    for entry in coeffs:
        eps = entry["eps"]
        row = {"kind": entry["kind"], "tag": entry["tag"]}
        t_values = {}
        for i in all_t:
            val = eps.dlog_t(i)
            val = val.substitute(
                {t_symbol(j): LogPolynomial.constant(0) for j in all_t}
            )
            t_values[i] = val
            mat = entry.get("kappas")
            if entry["kind"] == "log":
                target = inv2pi.scale(GScalar(mat.get(
                    frame.cone.label[i - 1], 0
                ))) if mat else LogPolynomial()
                if not (val - target).is_zero():
                    dni_verified = False
            elif entry["kind"] == "smooth":
                if not val.is_zero():
                    dni_verified = False
        w_values = []
        for s in w_syms:
            val = eps.derivative(s).substitute(
                {t_symbol(j): LogPolynomial.constant(0) for j in all_t}
            )
            w_values.append(val)
        w_rows.append(w_values)
        row["t_block"] = {i: str(v) for i, v in t_values.items()}
        row["w_block"] = {s.name: str(v) for s, v in zip(w_syms, w_values)}
        table.append(row)
    w_rank = rank_generic(GMatrix(w_rows)) if w_rows and w_syms else 0
    d = frame.mhs.lattice.dim
    gen_cols = [list(n.vec()) for n in frame.cone.generators]
    gen_rank = (
        Subspace.from_columns(d * d, gen_cols).dim() if gen_cols else 0
    )
    independent = gen_rank == k
    return TorelliReport(
        injective=(w_rank == len(w_syms)) and independent,
        w_block_rank=w_rank,
        w_directions=len(w_syms),
        generators_independent=independent,
        dni_verified=dni_verified,
        table=table,
    )


# -- deck transformations ------------------------------------------------------


def deck_shift(frame: SymbolicFrame, i: int) -> GMatrix:
    """``T_i`` applied to the lift: ``l_i -> l_i + 1``."""
    return matrix_shift_log(frame.lift, i)


def deck_consistency(frame: SymbolicFrame, i: int) -> bool:
    """``T_i lift = exp(N_i) lift`` exactly (monodromy well-definedness)."""
    shifted = deck_shift(frame, i)
    gamma_i = exp_nilpotent(_poly(frame.cone.generators[i - 1]))
    return (shifted - matrix_truncate(
        gamma_i @ frame.lift, frame.truncation
    )).is_zero()
