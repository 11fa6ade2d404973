"""Shared fixture corpus: hand-built limiting mixed Hodge structures of
dimensions 1 through 8 (zero monodromy, single rank-one degenerations,
multi-block cones, Hodge-Tate cones with equal weight filtrations, higher
weight with symmetric polarization), plus a seeded generator of random valid
mixed Hodge structures with compatible polarization forms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from lmhs.hodge import (
    DecreasingFiltration,
    IncreasingFiltration,
    MixedHodgeStructure,
    PolarizedLattice,
)
from lmhs.linalg import (
    GMatrix,
    GScalar,
    I,
    ONE,
    Subspace,
    ZERO,
    exp_nilpotent,
    inverse,
)
from lmhs.weights import NilpotentCone, cone_weight_filtration
from lmhs.genus2 import builtin_genus2


def unit(dim, i):
    return [ONE if k == i else ZERO for k in range(dim)]


def mat(dim, assignments):
    """Matrix from {(i, j): value} with zero elsewhere."""
    rows = [[ZERO] * dim for _ in range(dim)]
    for (i, j), v in assignments.items():
        rows[i][j] = GScalar.coerce(v)
    return GMatrix(rows)


@dataclass
class Instance:
    name: str
    lattice: PolarizedLattice
    cone: NilpotentCone
    f: DecreasingFiltration
    polarized: bool
    w: IncreasingFiltration = None
    faces: dict = field(default_factory=dict)  # extra cones by name

    def __post_init__(self):
        if self.w is None:
            self.w, _ = cone_weight_filtration(
                self.cone, self.lattice.weight
            )

    def mhs(self) -> MixedHodgeStructure:
        return MixedHodgeStructure(self.lattice, self.w, self.f)


def pure_dim2() -> Instance:
    q = GMatrix.from_rows([[0, 1], [-1, 0]])
    lattice = PolarizedLattice(dim=2, weight=1, q=q)
    cone = NilpotentCone(lattice, [GMatrix.zero(2, 2)], label=(1,))
    f = DecreasingFiltration(
        2,
        {
            0: Subspace.full(2),
            1: Subspace.from_columns(2, [[ONE, I]]),
            2: Subspace.zero(2),
        },
    )
    return Instance("pure_dim2", lattice, cone, f, polarized=True)


def lmhs_dim2(sign=1) -> Instance:
    q = GMatrix.from_rows([[0, 1], [-1, 0]])
    lattice = PolarizedLattice(dim=2, weight=1, q=q)
    n = mat(2, {(1, 0): sign})
    cone = NilpotentCone(lattice, [n], label=(1,))
    f = DecreasingFiltration(
        2,
        {
            0: Subspace.full(2),
            1: Subspace.from_columns(2, [unit(2, 0)]),
            2: Subspace.zero(2),
        },
    )
    return Instance(
        f"lmhs_dim2_{'pos' if sign > 0 else 'neg'}",
        lattice,
        cone,
        f,
        polarized=sign > 0,
    )


def genus2_instance() -> Instance:
    g = builtin_genus2()
    return Instance(
        "genus2", g.lattice, g.cone, g.f, polarized=True, w=g.w
    )


def two_block_dim4() -> Instance:
    q = GMatrix.from_rows(
        [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    )
    lattice = PolarizedLattice(dim=4, weight=1, q=q)
    n1 = mat(4, {(1, 0): 1})
    n2 = mat(4, {(3, 2): 1})
    cone = NilpotentCone(lattice, [n1, n2], label=(1, 2))
    f = DecreasingFiltration(
        4,
        {
            0: Subspace.full(4),
            1: Subspace.from_columns(4, [unit(4, 0), unit(4, 2)]),
            2: Subspace.zero(4),
        },
    )
    inst = Instance("two_block_dim4", lattice, cone, f, polarized=True)
    inst.faces = {
        "n1": cone.face((1,)),
        "n2": cone.face((2,)),
    }
    return inst


def siegel_matrix(s11, s12, s22):
    """Hodge-Tate nilpotent e1 -> s11 e3 + s12 e4, e2 -> s12 e3 + s22 e4."""
    return mat(
        4, {(2, 0): s11, (3, 0): s12, (2, 1): s12, (3, 1): s22}
    )


def siegel_dim4(extra_generator=False) -> Instance:
    """Hodge-Tate degeneration whose polarizing cone is the positive
    definite symmetric 2x2 matrices: weight filtration constant on the
    interior, so different faces share W."""
    q = GMatrix.from_rows(
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    )
    lattice = PolarizedLattice(dim=4, weight=1, q=q)
    n1 = siegel_matrix(1, 0, 1)
    n2 = siegel_matrix(2, 1, 1)
    gens = [n1, n2]
    label = (1, 2)
    if extra_generator:
        gens.append(siegel_matrix(1, 1, 2))
        label = (1, 2, 3)
    cone = NilpotentCone(lattice, gens, label=label)
    f = DecreasingFiltration(
        4,
        {
            0: Subspace.full(4),
            1: Subspace.from_columns(4, [unit(4, 0), unit(4, 1)]),
            2: Subspace.zero(4),
        },
    )
    inst = Instance(
        "siegel_dim4" + ("_3cone" if extra_generator else ""),
        lattice,
        cone,
        f,
        polarized=True,
    )
    inst.faces = {"n1": cone.face((1,)), "n2": cone.face((2,))}
    return inst


def same_ray_dim2() -> Instance:
    base = lmhs_dim2()
    n1 = base.cone.generators[0]
    cone = NilpotentCone(base.lattice, [n1, n1.scale(GScalar(2))], label=(1, 2))
    inst = Instance(
        "same_ray_dim2", base.lattice, cone, base.f, polarized=True
    )
    inst.faces = {"n1": cone.face((1,)), "n2": cone.face((2,))}
    return inst


def tate_dim3() -> Instance:
    """Weight 2, symmetric Q, maximal degeneration N with N^2 != 0."""
    q = GMatrix.from_rows([[0, 0, 1], [0, -1, 0], [1, 0, 0]])
    lattice = PolarizedLattice(dim=3, weight=2, q=q)
    n = mat(3, {(1, 0): 1, (2, 1): 1})
    cone = NilpotentCone(lattice, [n], label=(1,))
    f = DecreasingFiltration(
        3,
        {
            0: Subspace.full(3),
            1: Subspace.from_columns(3, [unit(3, 0), unit(3, 1)]),
            2: Subspace.from_columns(3, [unit(3, 0)]),
            3: Subspace.zero(3),
        },
    )
    return Instance("tate_dim3", lattice, cone, f, polarized=True)


def k3ish_dim4() -> Instance:
    """tate_dim3 plus a fixed (1,1) class: two nonzero primitive levels."""
    q = GMatrix.from_rows(
        [
            [0, 0, 1, 0],
            [0, -1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, 1],
        ]
    )
    lattice = PolarizedLattice(dim=4, weight=2, q=q)
    n = mat(4, {(1, 0): 1, (2, 1): 1})
    cone = NilpotentCone(lattice, [n], label=(1,))
    f = DecreasingFiltration(
        4,
        {
            0: Subspace.full(4),
            1: Subspace.from_columns(4, [unit(4, 0), unit(4, 1), unit(4, 3)]),
            2: Subspace.from_columns(4, [unit(4, 0)]),
            3: Subspace.zero(4),
        },
    )
    return Instance("k3ish_dim4", lattice, cone, f, polarized=True)


def direct_sum(name, a: Instance, b: Instance) -> Instance:
    """Block direct sum; generator lists are concatenated as separate
    generators acting on complementary blocks."""
    if a.lattice.weight != b.lattice.weight:
        raise ValueError("direct sum needs equal weights")
    da, db = a.lattice.dim, b.lattice.dim
    dim = da + db

    def embed_a(m):
        rows = [[ZERO] * dim for _ in range(dim)]
        for i in range(da):
            for j in range(da):
                rows[i][j] = m[i, j]
        return GMatrix(rows)

    def embed_b(m):
        rows = [[ZERO] * dim for _ in range(dim)]
        for i in range(db):
            for j in range(db):
                rows[da + i][da + j] = m[i, j]
        return GMatrix(rows)

    q = embed_a(a.lattice.q) + embed_b(b.lattice.q)
    lattice = PolarizedLattice(dim=dim, weight=a.lattice.weight, q=q)
    gens = [embed_a(g) for g in a.cone.generators] + [
        embed_b(g) for g in b.cone.generators
    ]
    cone = NilpotentCone(
        lattice, gens, label=tuple(range(1, len(gens) + 1))
    )

    def sum_filtration(fa, fb):
        steps = {}
        levels = set(fa.support()) | set(fb.support())
        for p in sorted(levels):
            cols = [
                list(c) + [ZERO] * db for c in fa.at(p).basis_columns()
            ] + [[ZERO] * da + list(c) for c in fb.at(p).basis_columns()]
            steps[p] = Subspace.from_columns(dim, cols)
        return DecreasingFiltration(dim, steps)

    f = sum_filtration(a.f, b.f)
    return Instance(
        name, lattice, cone, f, polarized=a.polarized and b.polarized
    )


def trivial_dim1() -> Instance:
    q = GMatrix.from_rows([[1]])
    lattice = PolarizedLattice(dim=1, weight=0, q=q)
    cone = NilpotentCone(lattice, [GMatrix.zero(1, 1)], label=(1,))
    f = DecreasingFiltration(
        1, {0: Subspace.full(1), 1: Subspace.zero(1)}
    )
    return Instance("trivial_dim1", lattice, cone, f, polarized=True)


def corpus() -> list:
    """The fixed fixture corpus (>= 12 instances, dims 1..8)."""
    out = [
        trivial_dim1(),
        pure_dim2(),
        lmhs_dim2(1),
        lmhs_dim2(-1),
        genus2_instance(),
        two_block_dim4(),
        siegel_dim4(),
        siegel_dim4(extra_generator=True),
        same_ray_dim2(),
        tate_dim3(),
        k3ish_dim4(),
        direct_sum("sum_dim6", genus2_instance(), lmhs_dim2(1)),
        direct_sum("sum_dim8", genus2_instance(), genus2_instance()),
        direct_sum("blocks_dim8", two_block_dim4(), siegel_dim4()),
    ]
    return out


def polarized_corpus() -> list:
    return [inst for inst in corpus() if inst.polarized]


# -- random valid MHS instances ----------------------------------------------


_SHAPES = [
    # weight 1 shapes: list of ((p, q), dim-slot) with symbolic slots
    ("pure1", 1, [((1, 0), "a"), ((0, 1), "a")]),
    (
        "lmhs1",
        1,
        [((1, 1), "a"), ((1, 0), "b"), ((0, 1), "b"), ((0, 0), "a")],
    ),
    (
        "spread1",
        1,
        [
            ((2, 1), "a"),
            ((1, 2), "a"),
            ((-1, 0), "a"),
            ((0, -1), "a"),
            ((1, 0), "b"),
            ((0, 1), "b"),
        ],
    ),
    (
        "k3ish2",
        2,
        [
            ((2, 2), "a"),
            ((0, 0), "a"),
            ((2, 1), "b"),
            ((1, 2), "b"),
            ((0, 1), "b"),
            ((1, 0), "b"),
            ((1, 1), "c"),
        ],
    ),
    (
        "tate2",
        2,
        [((2, 2), "a"), ((1, 1), "b"), ((0, 0), "a")],
    ),
]


def _build_base(shape, dims, rng):
    """Base R-split model with a compatible rational polarization form."""
    name, weight, slots = shape
    pieces = [(pq, dims[slot]) for pq, slot in slots if dims[slot] > 0]
    total = sum(h for _, h in pieces)
    # coordinate layout: conjugate orbits share real coordinate pairs
    layout = {}
    used = 0
    for (p, q), h in pieces:
        if (p, q) in layout:
            continue
        if p == q:
            layout[(p, q)] = ("real", used, h)
            used += h
        else:
            layout[(p, q)] = ("pair+", used, h)
            layout[(q, p)] = ("pair-", used, h)
            used += 2 * h
    dim = used
    piece_dims = dict(pieces)

    def basis_of(pq):
        kind, start, h = layout[pq]
        cols = []
        for j in range(h):
            v = [ZERO] * dim
            if kind == "real":
                v[start + j] = ONE
            elif kind == "pair+":
                v[start + j] = ONE
                v[start + h + j] = I
            else:
                v[start + j] = ONE
                v[start + h + j] = -I
            cols.append(v)
        return cols

    # complex adapted frame and its Gram matrix with dual-block pairing
    order = sorted(piece_dims, key=lambda pq: (-pq[0], -pq[1]))
    columns = []
    pos = {}
    at = 0
    for pq in order:
        cols = basis_of(pq)
        pos[pq] = (at, at + len(cols))
        columns.extend(cols)
        at += len(cols)
    c_mat = GMatrix.from_columns(columns)
    sign = (-1) ** weight
    s_values = {}
    for pq in order:
        dual = (weight - pq[0], weight - pq[1])
        if pq in s_values:
            continue
        if dual == pq:
            s_values[pq] = ONE
        elif dual == (pq[1], pq[0]):
            if weight % 2:
                s_values[pq] = I
                s_values[dual] = -I
            else:
                s_values[pq] = ONE
                s_values[dual] = ONE
        else:
            s_values[pq] = ONE
            s_values[dual] = GScalar(sign)
            s_values[(pq[1], pq[0])] = ONE
            s_values[(dual[1], dual[0])] = GScalar(sign)
    gram_rows = [[ZERO] * dim for _ in range(dim)]
    for pq in order:
        dual = (weight - pq[0], weight - pq[1])
        if dual not in pos:
            raise ValueError("shape is not self-dual")
        lo, hi = pos[pq]
        dlo, dhi = pos[dual]
        h = hi - lo
        for j in range(h):
            gram_rows[lo + j][dlo + j] = s_values[pq]
    gram = GMatrix(gram_rows)
    c_inv = inverse(c_mat)
    q = c_inv.transpose() @ gram @ c_inv
    # force exact symmetry class and realness by construction check
    lattice = PolarizedLattice(dim=dim, weight=weight, q=q)
    # filtrations of the base model
    levels = sorted({p + qq for (p, qq) in piece_dims})
    w_steps = {min(levels) - 1: Subspace.zero(dim)}
    for l in range(min(levels), max(levels) + 1):
        cols = []
        for pq in order:
            if pq[0] + pq[1] <= l:
                cols.extend(basis_of(pq))
        w_steps[l] = Subspace.from_columns(dim, cols)
    w = IncreasingFiltration(dim, w_steps)
    p_levels = sorted({p for (p, _) in piece_dims})
    f_steps = {max(p_levels) + 1: Subspace.zero(dim)}
    for p in range(min(p_levels), max(p_levels) + 1):
        cols = []
        for pq in order:
            if pq[0] >= p:
                cols.extend(basis_of(pq))
        f_steps[p] = Subspace.from_columns(dim, cols)
    f = DecreasingFiltration(dim, f_steps)
    return lattice, w, f


_TWIST_CACHE = {}


def _twist_basis(lattice, w):
    """Basis of g /\\ p_W^{-1} (complex twists preserving (W, Gr-data))."""
    key = (lattice.q, tuple(sorted((l, s.dim()) for l, s in w.steps.items())))
    if key in _TWIST_CACHE:
        return _TWIST_CACHE[key]
    from lmhs.weights import weight_shift_subspace

    space = weight_shift_subspace(lattice, w, 1)
    mats = [
        GMatrix.unvec(c, lattice.dim, lattice.dim)
        for c in space.basis_columns()
    ]
    _TWIST_CACHE[key] = mats
    return mats


def random_mhs(rng: random.Random):
    """A random valid MHS on a Q-compatible lattice, generically non-split."""
    while True:
        shape = rng.choice(_SHAPES)
        dims = {}
        for slot in set(s for _, s in shape[2]):
            dims[slot] = rng.randint(0, 2)
        pieces = [(pq, dims[s]) for pq, s in shape[2] if dims[s] > 0]
        total = 0
        seen = set()
        for pq, h in pieces:
            if pq in seen:
                continue
            seen.add(pq)
            total += h if pq[0] == pq[1] else 2 * h
        # count conj pairs once
        total = 0
        counted = set()
        for pq, h in pieces:
            if pq in counted:
                continue
            counted.add(pq)
            counted.add((pq[1], pq[0]))
            total += h if pq[0] == pq[1] else 2 * h
        if 0 < total <= 8:
            break
    lattice, w, f0 = _build_base(shape, dims, rng)
    twists = _twist_basis(lattice, w)
    x = GMatrix.zero(lattice.dim, lattice.dim)
    for b in twists:
        if rng.random() < 0.5:
            continue
        c = GScalar(
            Fraction(rng.randint(-2, 2), rng.randint(1, 2)),
            Fraction(rng.randint(-2, 2), rng.randint(1, 2)),
        )
        if c.is_zero():
            continue
        x = x + b.scale(c)
    g = exp_nilpotent(x)
    f = f0.apply(g)
    return MixedHodgeStructure(lattice, w, f)
