"""Grading elements, sl2-triples, positivity cones and extension-data tori.

For a polarized limiting mixed Hodge structure the pair ``(Y, N)`` with
``[Y, N] = -2N`` completes uniquely to a triple ``[M, N] = Y``,
``[Y, M] = 2M``; here the completion is a single exact linear solve.  The
ample-cone search follows the sign-splitting strategy that proves the
positivity cone nonempty, with a hard budget and a grid fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

from .errors import (
    InvariantError,
    NoTriple,
    NonDecomposable,
    UngradedInput,
)
from .hodge import LieBigrading, kappa
from .linalg import (
    GMatrix,
    GScalar,
    I,
    NoSolution,
    ONE,
    Subspace,
    ZERO,
    gram_is_positive_definite,
    kernel,
    solve_linear,
)
from .weights import NilpotentCone, centralizer_subspace


@dataclass(frozen=True)
class Sl2Triple:
    m: GMatrix
    y: GMatrix
    n: GMatrix
    degenerate: bool = False

    def check_brackets(self) -> bool:
        return (
            self.m.commutator(self.n) == self.y
            and self.y.commutator(self.m) == self.m.scale(GScalar(2))
            and self.y.commutator(self.n) == self.n.scale(GScalar(-2))
        )


def grading_element(lie: LieBigrading) -> GMatrix:
    """The real semisimple element acting on ``I^{p,q}`` by ``p + q - n``
    (so ``ad Y`` is ``p + q`` on ``g^{p,q}``)."""
    frame = lie.frame
    n = lie.lattice.weight
    dim = frame.dim()
    diag = [
        [
            GScalar(frame.position_key[i][0] + frame.position_key[i][1] - n)
            if i == j
            else ZERO
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    y = frame.from_adapted(GMatrix(diag))
    if not lie.lattice.in_g(y):
        raise UngradedInput(
            "grading element is not an infinitesimal Q-isometry; "
            "the bigrading is not Q-compatible"
        )
    if any(not e.is_real() for row in y.entries for e in row):
        raise UngradedInput("grading element is not real (not R-split data)")
    return y


def sl2_complete(
    n_op: GMatrix, y: GMatrix, lie: LieBigrading
) -> Sl2Triple:
    """Complete ``(Y, N)`` to the unique triple by solving ``[M,N] = Y``,
    ``[Y,M] = 2M`` inside g."""
    lattice = lie.lattice
    if n_op.is_zero() and y.is_zero():
        z = GMatrix.zero(lattice.dim, lattice.dim)
        return Sl2Triple(m=z, y=z, n=z, degenerate=True)
    if y.commutator(n_op) != n_op.scale(GScalar(-2)):
        raise NoTriple("[Y, N] != -2N for the supplied pair")
    basis = lattice.g_basis()
    cols = []
    for b in basis:
        col = list(b.commutator(n_op).vec())
        col.extend((y.commutator(b) - b.scale(GScalar(2))).vec())
        cols.append(col)
    rhs_col = list(y.vec()) + [ZERO] * (lattice.dim * lattice.dim)
    res = solve_linear(
        GMatrix.from_columns(cols), GMatrix.from_columns([rhs_col])
    )
    if isinstance(res, NoSolution):
        raise NoTriple("the linear system for M is inconsistent")
    if res.kernel.dim() != 0:
        raise NoTriple("the completion is not unique; input is degenerate")
    m = GMatrix.zero(lattice.dim, lattice.dim)
    for c, b in zip(res.solution.column(0), basis):
        if c.is_zero():
            continue
        m = m + b.scale(c)
    triple = Sl2Triple(m=m, y=y, n=n_op)
    if not triple.check_brackets():
        raise NoTriple("solved M fails the bracket relations")
    return triple


def _as_integer(value: GScalar):
    if value.is_rational_integer():
        return int(value.re)
    return None


@dataclass
class MembershipCertificate:
    kind: str
    verdict: bool
    kappa_values: dict
    details: dict


def cone_membership(
    m: GMatrix,
    cone: NilpotentCone,
    lie: LieBigrading,
    kind: str,
    gamma_logs=(),
    scale: GScalar = ONE,
    candidate_n: GMatrix | None = None,
    budget: int = 64,
) -> MembershipCertificate:
    """Exact membership checks for the integrality/positivity cones.

    ``kind`` is one of ``Nstar | N1 | Nsl2 | Nsl2plus``.  ``gamma_logs``
    supplies pairs ``(a^{-1,0}, b^{0,-1})`` of monodromy factorization
    components for the N1 integrality condition.
    """
    if kind not in ("Nstar", "N1", "Nsl2", "Nsl2plus"):
        raise InvariantError(f"unknown membership kind {kind!r}")
    frame = lie.frame
    if kind == "Nstar":
        graded_ok = frame.supported_on(m, lambda p, q: p == 1 and q <= 1)
    else:
        graded_ok = m.is_zero() or lie.in_piece(m, 1, 1)
    if not graded_ok:
        raise UngradedInput(
            "element is not supported on the required g^{1,*} slices",
            kind=kind,
        )
    kappas = {
        i: kappa(m, n_i, scale)
        for i, n_i in zip(cone.label, cone.generators)
    }
    details: dict = {}
    verdict = all(_as_integer(v) is not None for v in kappas.values())
    details["kappa_integral"] = verdict
    if kind in ("N1", "Nsl2", "Nsl2plus") and verdict:
        pairings = []
        for a_part, b_part in gamma_logs:
            val = kappa(m, a_part.commutator(b_part), scale)
            pairings.append(str(val))
            if _as_integer(val) is None:
                verdict = False
        details["gamma_pairings"] = pairings
    if kind in ("Nsl2", "Nsl2plus") and verdict:
        found = _solve_sl2_source(m, cone, lie, candidate_n, budget)
        details["sl2_source"] = (
            [str(c) for c in found[1]] if found else None
        )
        if not found:
            verdict = False
    if kind == "Nsl2plus" and verdict:
        positive = all(
            v.is_real() and v.re > 0 for v in kappas.values()
        )
        details["kappa_positive"] = positive
        verdict = verdict and positive
    return MembershipCertificate(
        kind=kind,
        verdict=verdict,
        kappa_values={i: str(v) for i, v in kappas.items()},
        details=details,
    )


def _solve_sl2_source(m, cone, lie, candidate_n, budget):
    """Find interior ``N = sum y_i N_i`` (y_i > 0 rational) with
    ``M = M(N)``, i.e. ``[m, N] = Y`` and the triple closes."""
    y_elt = grading_element(lie)
    if candidate_n is not None:
        try:
            triple = sl2_complete(candidate_n, y_elt, lie)
        except NoTriple:
            return None
        return ((candidate_n, ("supplied",)) if triple.m == m else None)
    cols = [list(m.commutator(n_i).vec()) for n_i in cone.generators]
    res = solve_linear(
        GMatrix.from_columns(cols), GMatrix.from_columns([list(y_elt.vec())])
    )
    if isinstance(res, NoSolution):
        return None
    particular = list(res.solution.column(0))
    kernel_cols = res.kernel.basis_columns()

    def acceptable(coeffs):
        if any(not c.is_real() or c.re <= 0 for c in coeffs):
            return None
        n_try = cone.combination(coeffs)
        try:
            triple = sl2_complete(n_try, y_elt, lie)
        except NoTriple:
            return None
        return coeffs if triple.m == m else None

    hit = acceptable(particular)
    if hit:
        return (cone.combination(hit), tuple(hit))
    if kernel_cols:
        rng = random.Random(0)
        for _ in range(budget):
            coeffs = list(particular)
            for kc in kernel_cols:
                t = GScalar(Fraction(rng.randint(-8, 8), rng.randint(1, 4)))
                coeffs = [c + t * k for c, k in zip(coeffs, kc)]
            hit = acceptable(coeffs)
            if hit:
                return (cone.combination(hit), tuple(hit))
    return None


@dataclass
class AmpleConeResult:
    found: bool
    point: tuple | None
    triple: Sl2Triple | None
    kappa_values: list
    reason: str = ""
    steps: int = 0


def ample_cone_search(
    cone: NilpotentCone,
    lie: LieBigrading,
    budget: int = 200,
    seed: int = 0,
    scale: GScalar = ONE,
) -> AmpleConeResult:
    """Search for rational ``y > 0`` with every ``kappa(M(N(y)), N_i) > 0``.

    Starts at the barycenter; a failing coordinate is halved (the boundary
    push direction), with a seeded rational grid as fallback.  The returned
    certificate is re-verified exactly.
    """
    if cone.is_zero() or len(cone) == 0:
        return AmpleConeResult(
            found=False, point=None, triple=None, kappa_values=[],
            reason="ZeroCone",
        )
    y_elt = grading_element(lie)
    k = len(cone)

    def evaluate(point):
        n_try = cone.combination(point)
        try:
            triple = sl2_complete(n_try, y_elt, lie)
        except NoTriple:
            return None, None
        vals = [kappa(triple.m, n_i, scale) for n_i in cone.generators]
        return triple, vals

    def all_positive(vals):
        return all(v.is_real() and v.re > 0 for v in vals)

    point = [Fraction(1)] * k
    best = None
    steps = 0
    for _ in range(budget):
        steps += 1
        triple, vals = evaluate(point)
        if vals is not None:
            if best is None or sum(1 for v in vals if v.re > 0) > best[0]:
                best = (sum(1 for v in vals if v.re > 0), list(point))
            if all_positive(vals):
                return AmpleConeResult(
                    found=True,
                    point=tuple(point),
                    triple=triple,
                    kappa_values=[str(v) for v in vals],
                    steps=steps,
                )
            bad = min(
                i for i, v in enumerate(vals) if not (v.is_real() and v.re > 0)
            )
            point[bad] = point[bad] / 2
        else:
            point = [p + Fraction(1, 3) for p in point]
    rng = random.Random(seed)
    grid = [
        Fraction(a, b) for b in (1, 2, 3, 4, 5) for a in range(1, 6)
    ]
    for _ in range(budget):
        steps += 1
        point = [grid[rng.randrange(len(grid))] for _ in range(k)]
        triple, vals = evaluate(point)
        if vals is not None and all_positive(vals):
            return AmpleConeResult(
                found=True,
                point=tuple(point),
                triple=triple,
                kappa_values=[str(v) for v in vals],
                steps=steps,
            )
    return AmpleConeResult(
        found=False,
        point=tuple(best[1]) if best else None,
        triple=None,
        kappa_values=[],
        reason="BudgetExhausted",
        steps=steps,
    )


@dataclass
class ExtensionSpace:
    """Level-``a`` extension data slice ``(+)_{p+q=-a, p<0} g^{p,q}``, with
    per-element bidegree tags; optionally cut down to the cone centralizer."""

    level: int
    basis: list          # list of GMatrix
    graded_tags: list    # parallel list of (p, q)
    polarized: bool = False

    def dim(self) -> int:
        return len(self.basis)

    def subspace(self, ambient_dim: int) -> Subspace:
        return Subspace.from_columns(
            ambient_dim * ambient_dim, [b.vec() for b in self.basis]
        )


def extension_space(
    lie: LieBigrading, a: int, cone: NilpotentCone | None = None
) -> ExtensionSpace:
    if a < 1:
        raise InvariantError("extension level must be >= 1")
    cent = centralizer_subspace(cone) if cone is not None else None
    basis, tags = [], []
    for (p, q), mats in lie.pieces.items():
        if p >= 0 or p + q != -a:
            continue
        if cent is None:
            chosen = mats
        else:
            piece = lie.piece_subspace(p, q).intersect(cent)
            d = lie.lattice.dim
            chosen = [GMatrix.unvec(c, d, d) for c in piece.basis_columns()]
        basis.extend(chosen)
        tags.extend([(p, q)] * len(chosen))
    return ExtensionSpace(
        level=a, basis=basis, graded_tags=tags, polarized=cone is not None
    )


@dataclass(frozen=True)
class LatticeData:
    """Z-independent generators of a discrete subgroup of an extension
    space, given as End(V) matrices with Gaussian-rational entries."""

    generators: tuple


@dataclass(frozen=True)
class TorusDecomposition:
    d1: int
    d2: int
    d3: int


def _complex_coordinates(space: ExtensionSpace, element: GMatrix, dim: int):
    cols = [list(b.vec()) for b in space.basis]
    res = solve_linear(
        GMatrix.from_columns(cols),
        GMatrix.from_columns([list(element.vec())]),
    )
    if isinstance(res, NoSolution):
        raise InvariantError("lattice generator is not in the extension space")
    return res.solution.column(0)


def torus_decomposition(
    space: ExtensionSpace, lattice_data: LatticeData, ambient_dim: int
) -> TorusDecomposition:
    """Split ``L^a / Lambda`` as ``C^{d1} x (C*)^{d2} x T^{d3}``.

    ``d3`` is the complex dimension of the maximal complex subspace ``U`` of
    the real span of the lattice; decomposability requires the lattice to
    meet ``U`` in full rank ``2 d3``.
    """
    m = space.dim()
    gens = [
        _complex_coordinates(space, g, ambient_dim)
        for g in lattice_data.generators
    ]
    if not gens:
        return TorusDecomposition(d1=m, d2=0, d3=0)

    def realify(coords):
        out = []
        for c in coords:
            out.extend([GScalar(c.re), GScalar(c.im)])
        return out

    def apply_j(real_vec):
        out = []
        for idx in range(0, len(real_vec), 2):
            a, b = real_vec[idx], real_vec[idx + 1]
            out.extend([-b, a])
        return out

    real_gens = [realify(g) for g in gens]
    span = Subspace.from_columns(2 * m, real_gens)
    if span.dim() != len(gens):
        raise InvariantError("lattice generators are not Z-independent")
    j_span = Subspace.from_columns(
        2 * m, [apply_j(c) for c in span.basis_columns()]
    )
    u = span.intersect(j_span)
    if u.dim() % 2 != 0:
        raise NonDecomposable("maximal complex subspace has odd real rank")
    d3 = u.dim() // 2
    # rank of Lambda /\ U: kernel of (generators modulo U)
    cols = []
    for g in real_gens:
        res = list(g)
        for j, p in enumerate(u.pivots()):
            fct = res[p]
            if fct.is_zero():
                continue
            col = u.basis.column(j)
            res = [x - fct * y for x, y in zip(res, col)]
        cols.append(res)
    lam_in_u = kernel(GMatrix.from_columns(cols)).dim()
    if lam_in_u != 2 * d3:
        raise NonDecomposable(
            "lattice does not meet its maximal complex subspace in full rank",
            rank=lam_in_u,
            expected=2 * d3,
        )
    rank = len(gens)
    d2 = rank - 2 * d3
    d1 = m - d2 - d3
    if d1 < 0 or d2 < 0:
        raise NonDecomposable("inconsistent decomposition dimensions")
    return TorusDecomposition(d1=d1, d2=d2, d3=d3)


@dataclass
class ChernFormReport:
    gram: GMatrix
    negative_definite: bool
    definiteness: str
    basis_dim: int


def chern_form(
    m: GMatrix,
    lie: LieBigrading,
    cone: NilpotentCone,
    scale: GScalar = ONE,
) -> ChernFormReport:
    """Hermitian Gram matrix ``H(u, v) = -i kappa(M, [u, conj v])`` on the
    centralizer slice ``c^{-1,0}``; negative-definite exactly when the dual
    polarization form is positive."""
    if not (m.is_zero() or lie.in_piece(m, 1, 1)):
        raise UngradedInput("Chern form input must lie in g^{1,1}")
    cent = centralizer_subspace(cone)
    piece = lie.piece_subspace(-1, 0).intersect(cent)
    d = lie.lattice.dim
    basis = [GMatrix.unvec(c, d, d) for c in piece.basis_columns()]
    rows = []
    for u in basis:
        row = []
        for v in basis:
            val = kappa(m, u.commutator(v.conjugate()), scale)
            row.append(GScalar(0, -1) * val)
        rows.append(row)
    gram = GMatrix(rows) if basis else GMatrix.zero(0, 0)
    if basis and gram != gram.conjugate().transpose():
        raise UngradedInput("Chern Gram matrix is not Hermitian")
    neg, _ = gram_is_positive_definite(gram.scale(GScalar(-1)))
    return ChernFormReport(
        gram=gram,
        negative_definite=neg,
        definiteness="negative" if neg else "not-negative-definite",
        basis_dim=len(basis),
    )
