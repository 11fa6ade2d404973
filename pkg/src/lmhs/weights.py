"""Monodromy weight filtrations, Hodge-Riemann certificates and the
compatibility calculus for nilpotent cones.

The weight filtration of a nilpotent ``N`` centered at ``n`` is the unique
increasing filtration with ``N W_l <= W_{l-2}`` and ``N^k : Gr_{n+k} ->
Gr_{n-k}`` an isomorphism.  It is produced by the kernel/image convolution

    W_{n+k} = sum_{j >= max(0,-k)}  im(N^j)  /\\  ker(N^{k+j+1})

and every returned filtration is re-certified against the two axioms by an
independent checker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import random

from .errors import (
    DimensionMismatch,
    IndependenceViolation,
    InvalidMHS,
    InvariantError,
    WrongFiltration,
)
from .hodge import (
    AdaptedFrame,
    DecreasingFiltration,
    IncreasingFiltration,
    MixedHodgeStructure,
    PolarizedLattice,
    Quotient,
    induced_map,
    kappa,
)
from .linalg import (
    GMatrix,
    GScalar,
    I,
    ONE,
    Subspace,
    ZERO,
    column_space,
    gram_is_positive_definite,
    is_nilpotent,
    kernel,
)


class NilpotentCone:
    """Commuting nilpotent Q-isometries ``N_i`` spanning an open cone.

    ``label`` names the generators; cones over the same lattice whose labels
    overlap must agree on the shared generators.
    """

    def __init__(self, lattice: PolarizedLattice, generators, label=None):
        self.lattice = lattice
        self.generators = list(generators)
        self.label = tuple(label) if label is not None else tuple(
            range(len(self.generators))
        )
        if len(self.label) != len(self.generators):
            raise InvariantError("label length must match generator count")
        for k, n in enumerate(self.generators):
            if n.shape() != (lattice.dim, lattice.dim):
                raise DimensionMismatch(f"generator {k} has wrong shape")
            if not is_nilpotent(n):
                raise InvariantError(f"generator {k} is not nilpotent")
            if not lattice.in_g(n):
                raise InvariantError(
                    f"generator {k} is not an infinitesimal Q-isometry"
                )
        for a in range(len(self.generators)):
            for b in range(a + 1, len(self.generators)):
                if not self.generators[a].commutator(self.generators[b]).is_zero():
                    raise InvariantError(
                        "generators must commute", pair=(a, b)
                    )

    def interior_element(self) -> GMatrix:
        acc = GMatrix.zero(self.lattice.dim, self.lattice.dim)
        for n in self.generators:
            acc = acc + n
        return acc

    def combination(self, coefficients) -> GMatrix:
        acc = GMatrix.zero(self.lattice.dim, self.lattice.dim)
        for c, n in zip(coefficients, self.generators):
            acc = acc + n.scale(GScalar.coerce(c))
        return acc

    def face(self, label) -> "NilpotentCone":
        label = tuple(label)
        if not set(label) <= set(self.label):
            raise InvariantError("face label is not a subset")
        pos = {l: i for i, l in enumerate(self.label)}
        return NilpotentCone(
            self.lattice, [self.generators[pos[l]] for l in label], label
        )

    def is_zero(self) -> bool:
        return all(n.is_zero() for n in self.generators)

    def __len__(self):
        return len(self.generators)


def monodromy_weight_filtration(
    n_op: GMatrix, n: int, ambient_dim: int | None = None
) -> IncreasingFiltration:
    """The unique weight filtration of a nilpotent operator, centered at n."""
    dim = ambient_dim if ambient_dim is not None else n_op.rows
    if not is_nilpotent(n_op):
        raise InvariantError("operator is not nilpotent")
    # nilpotency index
    powers = [GMatrix.identity(dim)]
    while not powers[-1].is_zero():
        powers.append(powers[-1] @ n_op)
    index = len(powers) - 1  # N^index = 0
    kernels = {e: kernel(powers[e]) for e in range(1, index + 1)}
    images = {e: column_space(powers[e]) for e in range(0, index)}
    full = Subspace.full(dim)
    steps = {}
    for k in range(-index - 1, index + 1):
        acc = Subspace.zero(dim)
        for j in range(max(0, -k), index):
            e = k + j + 1
            if e <= 0:
                continue
            ker_e = kernels[e] if e <= index else full
            acc = acc.sum(images[j].intersect(ker_e))
        steps[n + k] = acc
    steps[n + index] = full
    return IncreasingFiltration(dim, steps)


def verify_weight_axioms(
    n_op: GMatrix, w: IncreasingFiltration, n: int
) -> bool:
    """Independent axiom check: ``N W_l <= W_{l-2}`` and the induced
    ``N^k : Gr_{n+k} -> Gr_{n-k}`` bijective for every k >= 1."""
    lo, hi = w.min_level(), w.max_level()
    for level in range(lo, hi + 1):
        image = w.at(level).apply(n_op)
        if not w.at(level - 2).contains(image):
            return False
    for k in range(1, hi - n + 1):
        top = Quotient(w.at(n + k - 1), w.at(n + k))
        bot = Quotient(w.at(n - k - 1), w.at(n - k))
        if top.dim != bot.dim:
            return False
        if top.dim == 0:
            continue
        mat = induced_map(n_op.power(k), top, bot)
        if kernel(mat).dim() != 0:
            return False
    # symmetric graded dimensions are implied; re-check for safety
    for k in range(1, hi - n + 1):
        if w.graded_dim(n + k) != w.graded_dim(n - k):
            return False
    return True


@dataclass(frozen=True)
class ConeWeightCertificate:
    coefficient_samples: tuple


def cone_weight_filtration(
    cone: NilpotentCone, n: int, samples: int = 5, seed: int = 0
):
    """Weight filtration of the cone, certified on sampled interior points.

    Independence of the interior element is a classical fact for genuine
    LMHS cones; here it is re-checked on ``samples`` deterministic positive
    rational combinations, and a mismatch raises.
    """
    dim = cone.lattice.dim
    w = monodromy_weight_filtration(cone.interior_element(), n, dim)
    rng = random.Random(seed)
    tested = []
    for _ in range(max(1, samples)):
        coeffs = tuple(
            Fraction(rng.randint(1, 9), rng.randint(1, 9))
            for _ in cone.generators
        )
        tested.append(coeffs)
        other = monodromy_weight_filtration(cone.combination(coeffs), n, dim)
        if other != w:
            raise IndependenceViolation(
                "weight filtration depends on the interior point",
                coefficients=coeffs,
            )
    return w, ConeWeightCertificate(coefficient_samples=tuple(tested))


def primitive_graded(
    n_op: GMatrix, w: IncreasingFiltration, n: int, k: int
) -> Subspace:
    """``Prim_{n+k} = ker(N^{k+1} : Gr_{n+k} -> Gr_{n-k-2})`` in the
    coordinates of the chosen graded lift."""
    if k < 0:
        raise InvariantError("primitive level k must be >= 0")
    if not verify_weight_axioms(n_op, w, n):
        raise WrongFiltration("supplied W is not the weight filtration of N")
    top = Quotient(w.at(n + k - 1), w.at(n + k))
    bot = Quotient(w.at(n - k - 3), w.at(n - k - 2))
    if top.dim == 0:
        return Subspace.zero(0)
    mat = induced_map(n_op.power(k + 1), top, bot)
    return kernel(mat)


@dataclass
class PolarizationReport:
    verdict: bool
    tested_n: GMatrix
    in_g_minus1_minus1: bool
    shifts_f: bool
    per_level: list = field(default_factory=list)

    def add_level(self, k, prim_dim, hr1, hr2, witness=None):
        self.per_level.append(
            {
                "k": k,
                "prim_dim": prim_dim,
                "hr1": hr1,
                "hr2": hr2,
                "witness": witness,
            }
        )
        if not (hr1 and hr2):
            self.verdict = False


def _graded_q_form(lattice, n_op, k, quot):
    """The pairing ``Q(. , N^k .)`` on Gr_{n+k} through the chosen lifts."""
    nk = n_op.power(k)
    cols = quot.lift_columns
    rows = []
    for u in cols:
        row = []
        for v in cols:
            nv = (nk @ GMatrix.from_columns([list(v)])).column(0)
            row.append(lattice.pair(u, nv))
        rows.append(row)
    return GMatrix(rows)


def polarization_check(
    w: IncreasingFiltration,
    f: DecreasingFiltration,
    cone: NilpotentCone,
    n: int,
    element: GMatrix | None = None,
) -> PolarizationReport:
    """Certify the Hodge-Riemann relations of ``Q(. , N^k .)`` on the
    primitive graded pieces, for the interior element of the cone.

    Also checks N in g^{-1,-1} and N F^p <= F^{p-1}.  Definiteness is
    decided by exact Hermitian reduction, never numerically.
    """
    lattice = cone.lattice
    mhs = MixedHodgeStructure(lattice, w, f)  # raises InvalidMHS
    if not verify_weight_axioms(cone.interior_element(), w, n):
        raise WrongFiltration("W is not the weight filtration of the cone")
    n_op = element if element is not None else cone.interior_element()
    lie = mhs.lie_bigrading()
    in_piece = n_op.is_zero() or lie.in_piece(n_op, -1, -1)
    shifts = all(
        f.at(p - 1).contains(f.at(p).apply(n_op))
        for p in range(f.min_level(), f.max_level() + 1)
    )
    report = PolarizationReport(
        verdict=in_piece and shifts,
        tested_n=n_op,
        in_g_minus1_minus1=in_piece,
        shifts_f=shifts,
    )
    fbar = f.conjugate()
    top_k = w.max_level() - n
    for k in range(0, top_k + 1):
        quot = Quotient(w.at(n + k - 1), w.at(n + k))
        if quot.dim == 0:
            continue
        bot = Quotient(w.at(n - k - 3), w.at(n - k - 2))
        prim = kernel(induced_map(n_op.power(k + 1), quot, bot))
        if prim.dim() == 0:
            report.add_level(k, 0, True, True)
            continue
        gram = _graded_q_form(lattice, n_op, k, quot)
        # Hodge pieces of the weight n+k structure on Prim
        fgr = {
            p: quot.project_subspace(f.at(p).intersect(w.at(n + k)))
            for p in range(f.min_level(), f.max_level() + 2)
        }
        fbgr = {
            q: quot.project_subspace(fbar.at(q).intersect(w.at(n + k)))
            for q in range(f.min_level(), f.max_level() + 2)
        }
        hr1_ok = True
        hr2_ok = True
        witness = None
        pieces = {}
        for p in sorted(fgr):
            q = n + k - p
            if q not in fbgr:
                continue
            piece = prim.intersect(fgr[p]).intersect(fbgr[q])
            if piece.dim() > 0:
                pieces[(p, q)] = piece
        covered = sum(s.dim() for s in pieces.values())
        if covered != prim.dim():
            hr1_ok = False
            witness = "primitive part is not spanned by Hodge pieces"
        # HR1: Q^N(F^p Prim, F^{n+k-p+1} Prim) = 0
        for p in sorted(fgr):
            fp = prim.intersect(fgr[p])
            fq = prim.intersect(fgr[n + k - p + 1])
            for u in fp.basis_columns():
                ur = GMatrix.from_columns([list(u)]).transpose()
                for v in fq.basis_columns():
                    val = (
                        ur
                        @ gram
                        @ GMatrix.from_columns([list(v)])
                    )[0, 0]
                    if not val.is_zero():
                        hr1_ok = False
                        witness = f"HR1 fails at p={p}"
        # HR2: i^{p-q} Q^N(u, conj u) > 0 on each piece
        for (p, q), piece in sorted(pieces.items()):
            phase = ONE
            for _ in range((p - q) % 4):
                phase = phase * I
            basis = piece.basis_columns()
            h_rows = []
            for u in basis:
                row = []
                ur = GMatrix.from_columns([list(u)]).transpose()
                for v in basis:
                    vbar = [x.conjugate() for x in v]
                    val = (
                        ur @ gram @ GMatrix.from_columns([vbar])
                    )[0, 0]
                    row.append(phase * val)
                h_rows.append(row)
            h = GMatrix(h_rows)
            ok, bad = gram_is_positive_definite(h)
            if not ok:
                hr2_ok = False
                witness = {
                    "piece": (p, q),
                    "vector": [str(x) for x in (bad or ())],
                }
        report.add_level(k, prim.dim(), hr1_ok, hr2_ok, witness)
    return report


def reduced_limit(mhs: MixedHodgeStructure) -> DecreasingFiltration:
    """The naive boundary limit: ``F_inf^q = (+)_{b <= n-q} I^{a,b}``."""
    bg = mhs.bigrading()
    n = mhs.lattice.weight
    dim = mhs.lattice.dim
    qs = sorted({b for (_, b) in bg.keys()})
    steps = {}
    lo, hi = n - max(qs), n - min(qs)
    for q in range(lo, hi + 2):
        acc = Subspace.zero(dim)
        for (a, b), piece in bg.pieces.items():
            if b <= n - q:
                acc = acc.sum(piece)
        steps[q] = acc
    steps[lo] = Subspace.full(dim)
    return DecreasingFiltration(dim, steps)


def centralizer_subspace(cone: NilpotentCone) -> Subspace:
    """{X in g : [X, N_i] = 0 for all i} as a subspace of vec(End)."""
    lattice = cone.lattice
    d = lattice.dim
    basis = lattice.g_basis()
    # for X = sum c_k B_k, [X, N_i] = 0 gives d*d equations per generator
    cols = []
    for b in basis:
        col = []
        for n_op in cone.generators:
            col.extend(b.commutator(n_op).vec())
        cols.append(col)
    if not cone.generators:
        coeff_kernel = Subspace.full(len(basis))
    else:
        mat = GMatrix.from_columns(cols)
        coeff_kernel = kernel(mat)
    vec_cols = []
    for coeffs in coeff_kernel.basis_columns():
        acc = GMatrix.zero(d, d)
        for c, b in zip(coeffs, basis):
            if c.is_zero():
                continue
            acc = acc + b.scale(c)
        vec_cols.append(acc.vec())
    return Subspace.from_columns(d * d, vec_cols)


def weight_shift_subspace(
    lattice: PolarizedLattice, w: IncreasingFiltration, a: int
) -> Subspace:
    """``p_W^{-a} = {X in g : X W_l <= W_{l-a}}`` as a subspace of vec(End)."""
    d = lattice.dim
    basis = lattice.g_basis()
    # linear conditions: for each level l and each basis vector v of W_l,
    # X v must lie in W_{l-a}
    levels = [
        l
        for l in range(w.min_level(), w.max_level() + 1)
        if w.at(l).dim() > 0
    ]
    cols = []
    for b in basis:
        col = []
        for l in levels:
            target = w.at(l - a)
            for v in w.at(l).basis_columns():
                img = (b @ GMatrix.from_columns([list(v)])).column(0)
                # residue of img modulo target: reduce by echelon basis
                res = list(img)
                for j, p in enumerate(target.pivots()):
                    fct = res[p]
                    if fct.is_zero():
                        continue
                    tc = target.basis.column(j)
                    res = [x - fct * y for x, y in zip(res, tc)]
                col.extend(res)
        cols.append(col)
    mat = GMatrix.from_columns(cols)
    coeff_kernel = kernel(mat)
    vec_cols = []
    for coeffs in coeff_kernel.basis_columns():
        acc = GMatrix.zero(d, d)
        for c, b in zip(coeffs, basis):
            if c.is_zero():
                continue
            acc = acc + b.scale(c)
        vec_cols.append(acc.vec())
    return Subspace.from_columns(d * d, vec_cols)


def centralizer_filtration(
    cone: NilpotentCone, w: IncreasingFiltration, max_shift: int | None = None
):
    """Map ``a -> (p_W^{-a}, c_I^{-a})`` for a = 0..spread, as vec(End)
    subspaces; ``c_I^{-a} = p_W^{-a} /\\ centralizer(cone)``."""
    spread = (
        max_shift
        if max_shift is not None
        else w.max_level() - w.min_level() + 1
    )
    cent = centralizer_subspace(cone)
    table = {}
    for a in range(0, spread + 1):
        pwa = weight_shift_subspace(cone.lattice, w, a)
        table[a] = {"p_w": pwa, "c_i": pwa.intersect(cent)}
    return table


def matrix_in_subspace(x: GMatrix, space: Subspace) -> bool:
    return space.contains_vector(x.vec())


@dataclass
class EquivalenceReport:
    equal: bool
    criterion: bool
    agrees: bool
    lemma_c2_confirmed: bool | None
    inner_label: tuple
    outer_label: tuple


def weight_equivalence(
    inner: NilpotentCone, outer: NilpotentCone, n: int, seed: int = 0
) -> EquivalenceReport:
    """Compare W(inner) and W(outer) for a face ``inner`` of ``outer`` and
    cross-check against the centralizer criterion ``outer <= c_inner^{-1}``;
    when the filtrations agree, ``outer <= c_inner^{-2}`` is verified too."""
    if not set(inner.label) <= set(outer.label):
        raise InvariantError("inner cone must be a face of the outer cone")
    w_inner, _ = cone_weight_filtration(inner, n, seed=seed)
    w_outer, _ = cone_weight_filtration(outer, n, seed=seed)
    equal = w_inner == w_outer
    table = centralizer_filtration(inner, w_inner, max_shift=2)
    c1, c2 = table[1]["c_i"], table[2]["c_i"]
    criterion = all(
        matrix_in_subspace(g, c1) for g in outer.generators
    )
    lemma = None
    if equal:
        lemma = all(matrix_in_subspace(g, c2) for g in outer.generators)
    return EquivalenceReport(
        equal=equal,
        criterion=criterion,
        agrees=equal == criterion,
        lemma_c2_confirmed=lemma,
        inner_label=inner.label,
        outer_label=outer.label,
    )


def maximal_weight_set(cones, w: IncreasingFiltration, n: int, seed: int = 0):
    """Union of the labels of all cones whose weight filtration equals ``w``,
    re-verified as a single cone."""
    if not cones:
        raise InvariantError("need at least one cone")
    lattice = cones[0].lattice
    merged = {}
    matched = []
    for cone in cones:
        wc, _ = cone_weight_filtration(cone, n, seed=seed)
        if wc == w:
            matched.append(cone)
            for lbl, gen in zip(cone.label, cone.generators):
                if lbl in merged and merged[lbl] != gen:
                    raise InvariantError(
                        "inconsistent generators for shared label", label=lbl
                    )
                merged[lbl] = gen
    if not merged:
        return tuple(), None
    labels = tuple(sorted(merged))
    union = NilpotentCone(lattice, [merged[l] for l in labels], labels)
    w_union, cert = cone_weight_filtration(union, n, seed=seed)
    if w_union != w:
        raise IndependenceViolation(
            "union cone does not reproduce the common weight filtration"
        )
    return labels, union


def defs_decomposition(mhs: MixedHodgeStructure, cone: NilpotentCone):
    """Split ``f_perp /\\ centralizer`` into the three bracket-closed slices

        d = (+)_{p<0, p+q=0} c^{p,q}
        e = (+)_{p<0<q, p+q<0} c^{p,q}
        s = (+)_{p<0, q<=0} c^{p,q}   (the f_inf part)
    """
    lie = mhs.lie_bigrading()
    cent = centralizer_subspace(cone)
    def slice_of(predicate):
        return lie.select_subspace(predicate).intersect(cent)

    d_part = slice_of(lambda p, q: p < 0 and p + q == 0)
    e_part = slice_of(lambda p, q: p < 0 < q and p + q < 0)
    s_part = slice_of(lambda p, q: p < 0 and q <= 0)
    whole = slice_of(lambda p, q: p < 0 and p + q <= 0)
    total = d_part.sum(e_part).sum(s_part)
    if total != whole:
        raise InvalidMHS("d/e/s slices do not fill f_perp /\\ centralizer")
    if (
        d_part.dim() + e_part.dim() + s_part.dim()
        != whole.dim()
    ):
        raise InvalidMHS("d/e/s slices are not independent")
    return {"d": d_part, "e": e_part, "s": s_part}
