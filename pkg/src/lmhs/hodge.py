"""Filtrations, mixed Hodge structure validation and Deligne bigradings.

The central objects:

* ``IncreasingFiltration`` / ``DecreasingFiltration`` over a fixed ambient
  space (these carry the weight filtration ``W`` and Hodge filtration ``F``);
* ``MixedHodgeStructure`` with its pure-graded-piece validation;
* ``Bigrading``: the Deligne splitting ``I^{p,q}`` computed by the general
  formula, valid for non-split structures;
* ``LieBigrading``: the induced splitting of ``g = End(V, Q)`` together with
  the slices ``f``, ``f_perp``, ``m`` used everywhere downstream;
* ``kappa``: the invariant trace form on ``End(V)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch, InvalidMHS, InvariantError
from .linalg import (
    GMatrix,
    GScalar,
    ONE,
    Subspace,
    ZERO,
    inverse,
    solve_linear,
)


@dataclass(frozen=True)
class PolarizedLattice:
    """Ambient rational vector space with a ``(-1)^n``-symmetric form.

    ``q`` is the Gram matrix of the pairing ``Q(u, v) = u^T q v``.
    """

    dim: int
    weight: int
    q: GMatrix
    hodge_numbers: tuple | None = None

    def __post_init__(self):
        if self.q.shape() != (self.dim, self.dim):
            raise DimensionMismatch("Q must be dim x dim")
        if any(
            not x.is_real() for row in self.q.entries for x in row
        ):
            raise InvariantError("Q must have rational (real) entries")
        sign = GScalar((-1) ** self.weight)
        if self.q.transpose() != self.q.scale(sign):
            raise InvariantError(
                "Q must satisfy Q(u,v) = (-1)^n Q(v,u)", weight=self.weight
            )
        try:
            inverse(self.q)
        except ZeroDivisionError:
            raise InvariantError("Q must be nondegenerate") from None
        if self.weight < 0:
            raise InvariantError("weight must be >= 0")
        if self.hodge_numbers is not None and sum(self.hodge_numbers) != self.dim:
            raise InvariantError("hodge numbers must sum to dim")

    def q_inverse(self) -> GMatrix:
        return inverse(self.q)

    def pair(self, u, v) -> GScalar:
        """Q(u, v) for coordinate vectors."""
        acc = ZERO
        for i, ui in enumerate(u):
            if ui == ZERO:
                continue
            row = self.q.row(i)
            for j, vj in enumerate(v):
                if row[j].is_zero():
                    continue
                acc = acc + ui * row[j] * vj
        return acc

    def in_g(self, x: GMatrix) -> bool:
        """Whether ``x`` lies in ``End(V, Q)``: Q(xu,v) + Q(u,xv) = 0."""
        return (x.transpose() @ self.q + self.q @ x).is_zero()

    def g_dimension(self) -> int:
        n = self.dim
        return n * (n + 1) // 2 if self.weight % 2 else n * (n - 1) // 2

    def g_basis(self) -> list[GMatrix]:
        """Rational basis of ``End(V, Q)``.

        The condition ``X^T Q + Q X = 0`` says ``S = QX`` is symmetric for
        odd weight and skew for even weight, so the basis is ``Q^{-1} S``
        over the standard symmetric/skew matrices.
        """
        qinv = self.q_inverse()
        n = self.dim
        symmetric = self.weight % 2 == 1
        basis = []
        for i in range(n):
            for j in range(i, n):
                if i == j:
                    if not symmetric:
                        continue
                    s = [[ZERO] * n for _ in range(n)]
                    s[i][i] = ONE
                else:
                    s = [[ZERO] * n for _ in range(n)]
                    s[i][j] = ONE
                    s[j][i] = ONE if symmetric else -ONE
                basis.append(qinv @ GMatrix(s))
        return basis


class IncreasingFiltration:
    """W_l, increasing and exhaustive: 0 below the support, V above it."""

    def __init__(self, ambient_dim: int, steps: dict):
        self.ambient_dim = ambient_dim
        self.steps = dict(sorted(steps.items()))
        keys = list(self.steps)
        if not keys:
            raise InvariantError("filtration needs at least one step")
        prev = None
        for k in keys:
            s = self.steps[k]
            if s.ambient_dim != ambient_dim:
                raise DimensionMismatch("step in wrong ambient space")
            if prev is not None and not s.contains(prev):
                raise InvariantError(f"W_{k} does not contain the previous step")
            prev = s
        if self.steps[keys[-1]].dim() != ambient_dim:
            raise InvariantError("top step of W must be the full space")

    def support(self):
        return list(self.steps)

    def at(self, level: int) -> Subspace:
        chosen = None
        for k in self.steps:
            if k <= level:
                chosen = k
        if chosen is None:
            return Subspace.zero(self.ambient_dim)
        return self.steps[chosen]

    def min_level(self) -> int:
        """Smallest l with W_l != 0."""
        for k, s in self.steps.items():
            if s.dim() > 0:
                return k
        return max(self.steps)

    def max_level(self) -> int:
        """Smallest l with W_l = V."""
        for k, s in self.steps.items():
            if s.dim() == self.ambient_dim:
                return k
        return max(self.steps)

    def graded_dim(self, level: int) -> int:
        return self.at(level).dim() - self.at(level - 1).dim()

    def is_real(self) -> bool:
        return all(s.conjugate() == s for s in self.steps.values())

    def __eq__(self, other):
        if not isinstance(other, IncreasingFiltration):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim:
            return False
        levels = set(self.steps) | set(other.steps)
        span = sorted(levels)
        lo, hi = span[0] - 1, span[-1] + 1
        return all(self.at(k) == other.at(k) for k in range(lo, hi + 1))

    def __repr__(self):
        dims = {k: s.dim() for k, s in self.steps.items()}
        return f"IncreasingFiltration({dims})"


class DecreasingFiltration:
    """F^p, decreasing: V at the bottom of the support, 0 above the top."""

    def __init__(self, ambient_dim: int, steps: dict):
        self.ambient_dim = ambient_dim
        self.steps = dict(sorted(steps.items()))
        keys = list(self.steps)
        if not keys:
            raise InvariantError("filtration needs at least one step")
        prev = None
        for k in keys:
            s = self.steps[k]
            if s.ambient_dim != ambient_dim:
                raise DimensionMismatch("step in wrong ambient space")
            if prev is not None and not prev.contains(s):
                raise InvariantError(f"F^{k} is not contained in the previous step")
            prev = s
        if self.steps[keys[0]].dim() != ambient_dim:
            raise InvariantError("bottom step of F must be the full space")

    def support(self):
        return list(self.steps)

    def at(self, p: int) -> Subspace:
        chosen = None
        for k in reversed(self.steps):
            if k >= p:
                chosen = k
        if chosen is None:
            return (
                Subspace.full(self.ambient_dim)
                if p <= min(self.steps)
                else Subspace.zero(self.ambient_dim)
            )
        return self.steps[chosen]

    def min_level(self) -> int:
        return min(self.steps)

    def max_level(self) -> int:
        """Largest p with F^p != 0."""
        last = min(self.steps)
        for k, s in self.steps.items():
            if s.dim() > 0:
                last = k
        return last

    def conjugate(self) -> "DecreasingFiltration":
        return DecreasingFiltration(
            self.ambient_dim, {k: s.conjugate() for k, s in self.steps.items()}
        )

    def apply(self, matrix: GMatrix) -> "DecreasingFiltration":
        return DecreasingFiltration(
            self.ambient_dim, {k: s.apply(matrix) for k, s in self.steps.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, DecreasingFiltration):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim:
            return False
        levels = set(self.steps) | set(other.steps)
        span = sorted(levels)
        lo, hi = span[0] - 1, span[-1] + 1
        return all(self.at(k) == other.at(k) for k in range(lo, hi + 1))

    def __repr__(self):
        dims = {k: s.dim() for k, s in self.steps.items()}
        return f"DecreasingFiltration({dims})"


class Quotient:
    """Explicit presentation of ``big/sub`` by an echelon-selected complement.

    The lift is the set of echelon basis columns of ``big`` whose pivot rows
    are not pivot rows of ``sub``; projection solves the triangular system
    directly from pivot-row coordinates.
    """

    def __init__(self, sub: Subspace, big: Subspace):
        if not big.contains(sub):
            raise InvariantError("quotient needs sub <= big")
        self.sub = sub
        self.big = big
        sub_pivots = set(sub.pivots())
        self.lift_columns = [
            big.basis.column(j)
            for j, p in enumerate(big.pivots())
            if p not in sub_pivots
        ]
        self.lift_pivots = [p for p in big.pivots() if p not in sub_pivots]
        self.dim = len(self.lift_columns)

    def project(self, vector):
        """Coordinates of ``vector + sub`` in the complement basis."""
        v = [GScalar.coerce(x) for x in vector]
        coords = []
        sub_coords = []
        for j, p in enumerate(self.sub.pivots()):
            sub_coords.append((j, v[p]))
        for p in self.lift_pivots:
            c = v[p]
            for j, a in sub_coords:
                if not a.is_zero():
                    c = c - a * self.sub.basis[p, j]
            coords.append(c)
        return tuple(coords)

    def project_subspace(self, space: Subspace) -> Subspace:
        cols = [self.project(c) for c in space.basis_columns()]
        return Subspace.from_columns(self.dim, cols)

    def lift(self, coords):
        v = [ZERO] * self.big.ambient_dim
        for c, col in zip(coords, self.lift_columns):
            c = GScalar.coerce(c)
            if c.is_zero():
                continue
            v = [x + c * y for x, y in zip(v, col)]
        return tuple(v)


def induced_map(x: GMatrix, src: Quotient, dst: Quotient) -> GMatrix:
    """Matrix of the map induced by ``x`` between two quotients.

    Requires ``x(src.big) <= dst.big`` and ``x(src.sub) <= dst.sub`` (not
    re-checked here); with explicit lifts the result is basis-exact.
    """
    cols = []
    for c in src.lift_columns:
        image = (x @ GMatrix.from_columns([list(c)])).column(0)
        cols.append(dst.project(image))
    return GMatrix.from_columns(cols) if cols else GMatrix.zero(dst.dim, 0)


@dataclass
class ValidationReport:
    valid: bool
    checks: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def add(self, level, p, ok, detail=""):
        self.checks.append((level, p, ok, detail))
        if not ok:
            self.failures.append((level, p, detail))
            self.valid = False


def validate_mhs(
    w: IncreasingFiltration,
    f: DecreasingFiltration,
    lattice: PolarizedLattice,
) -> ValidationReport:
    """Check that ``F`` induces a pure weight-l Hodge structure on every
    ``Gr^W_l``: F^p(Gr_l) + conj(F^{l-p+1}(Gr_l)) is a direct sum equal to
    Gr_l for all p."""
    if w.ambient_dim != lattice.dim or f.ambient_dim != lattice.dim:
        raise DimensionMismatch("filtrations must live on the lattice space")
    report = ValidationReport(valid=True)
    if not w.is_real():
        report.add(None, None, False, "weight filtration is not conjugation-stable")
        return report
    for level in range(w.min_level(), w.max_level() + 1):
        big, small = w.at(level), w.at(level - 1)
        quot = Quotient(small, big)
        if quot.dim == 0:
            continue
        for p in range(f.min_level(), f.max_level() + 2):
            fp = quot.project_subspace(f.at(p).intersect(big))
            fq_bar = quot.project_subspace(
                f.at(level - p + 1).conjugate().intersect(big)
            )
            ok = (
                fp.dim() + fq_bar.dim() == quot.dim
                and fp.intersect(fq_bar).dim() == 0
            )
            report.add(
                level,
                p,
                ok,
                f"dim F^{p}(Gr)={fp.dim()}, dim conj F^{level - p + 1}(Gr)="
                f"{fq_bar.dim()}, dim Gr={quot.dim}",
            )
    return report


class Bigrading:
    """The Deligne splitting ``V = (+) I^{p,q}`` of a mixed Hodge structure."""

    def __init__(self, ambient_dim: int, pieces: dict):
        self.ambient_dim = ambient_dim
        self.pieces = {
            k: v for k, v in sorted(pieces.items()) if v.dim() > 0
        }
        self._frame = None

    def piece(self, p: int, q: int) -> Subspace:
        return self.pieces.get((p, q), Subspace.zero(self.ambient_dim))

    def dims(self) -> dict:
        return {k: v.dim() for k, v in self.pieces.items()}

    def keys(self):
        return list(self.pieces)

    def weight_sum(self, max_level: int) -> Subspace:
        """(+) of pieces with p + q <= max_level."""
        acc = Subspace.zero(self.ambient_dim)
        for (p, q), s in self.pieces.items():
            if p + q <= max_level:
                acc = acc.sum(s)
        return acc

    def hodge_sum(self, min_p: int) -> Subspace:
        """(+) of pieces with p >= min_p."""
        acc = Subspace.zero(self.ambient_dim)
        for (p, q), s in self.pieces.items():
            if p >= min_p:
                acc = acc.sum(s)
        return acc

    def frame(self) -> "AdaptedFrame":
        if self._frame is None:
            self._frame = AdaptedFrame(self)
        return self._frame


def deligne_bigrading_from(w, f) -> Bigrading:
    """The general Deligne formula

    I^{p,q} = F^p  /\\  W_{p+q}  /\\
              ( conj(F^q) /\\ W_{p+q}  +  sum_{j>=1} conj(F^{q-j}) /\\ W_{p+q-j-1} ).
    """
    dim = w.ambient_dim
    fbar = f.conjugate()
    pieces = {}
    wmin, wmax = w.min_level(), w.max_level()
    fmin, fmax = f.min_level(), f.max_level()
    cache = {}

    def fw(p, level):
        key = (p, level)
        if key not in cache:
            cache[key] = f.at(p).intersect(w.at(level))
        return cache[key]

    def fbw(q, level):
        key = ("bar", q, level)
        if key not in cache:
            cache[key] = fbar.at(q).intersect(w.at(level))
        return cache[key]

    total = 0
    for s in range(wmin, wmax + 1):
        for p in range(fmin, fmax + 1):
            q = s - p
            second = fbw(q, s)
            j = 1
            while s - j - 1 >= wmin - 1:
                second = second.sum(fbw(q - j, s - j - 1))
                j += 1
            piece = fw(p, s).intersect(second)
            if piece.dim() > 0:
                pieces[(p, q)] = piece
                total += piece.dim()
    bg = Bigrading(dim, pieces)
    if total != dim:
        raise InvalidMHS(
            "Deligne pieces do not fill the space", dims=bg.dims()
        )
    direct = Subspace.zero(dim)
    for s in bg.pieces.values():
        if direct.intersect(s).dim() != 0:
            raise InvalidMHS("Deligne pieces are not independent")
        direct = direct.sum(s)
    # recovery of both filtrations
    for level in range(wmin - 1, wmax + 1):
        if bg.weight_sum(level) != w.at(level):
            raise InvalidMHS(f"bigrading does not recover W_{level}")
    for p in range(fmin, fmax + 2):
        if bg.hodge_sum(p) != f.at(p):
            raise InvalidMHS(f"bigrading does not recover F^{p}")
    return bg


def is_r_split(bigrading: Bigrading) -> bool:
    """True iff conj(I^{p,q}) = I^{q,p} for every piece."""
    for (p, q), s in bigrading.pieces.items():
        if s.conjugate() != bigrading.piece(q, p):
            return False
    return True


class AdaptedFrame:
    """Basis adapted to a bigrading: columns grouped by piece, ordered by
    decreasing ``p`` (then decreasing ``q``).

    In this basis any endomorphism splits into blocks of pure bidegree, so
    component extraction is a support mask rather than a subspace solve.
    """

    def __init__(self, bigrading: Bigrading):
        self.bigrading = bigrading
        order = sorted(bigrading.pieces, key=lambda pq: (-pq[0], -pq[1]))
        self.order = order
        cols, slices, start = [], {}, 0
        for key in order:
            basis = bigrading.pieces[key].basis_columns()
            cols.extend(basis)
            slices[key] = (start, start + len(basis))
            start += len(basis)
        self.slices = slices
        self.t = GMatrix.from_columns(cols)
        self.t_inv = inverse(self.t)
        # bidegree of each basis position
        self.position_key = []
        for key in order:
            lo, hi = slices[key]
            self.position_key.extend([key] * (hi - lo))

    def dim(self) -> int:
        return self.t.rows

    def to_adapted(self, x: GMatrix) -> GMatrix:
        return self.t_inv @ x @ self.t

    def from_adapted(self, y: GMatrix) -> GMatrix:
        return self.t @ y @ self.t_inv

    def component(self, x: GMatrix, p: int, q: int) -> GMatrix:
        """The ``(p, q)`` part of ``x`` in End(V); works for polynomial
        entries too since the frame itself is numeric."""
        y = self.to_adapted(x)
        n = self.dim()
        rows = []
        for i in range(n):
            ki = self.position_key[i]
            row = []
            for j in range(n):
                kj = self.position_key[j]
                keep = (ki[0] - kj[0], ki[1] - kj[1]) == (p, q)
                row.append(y[i, j] if keep else y[i, j] - y[i, j])
            rows.append(row)
        return self.from_adapted(GMatrix(rows))

    def components(self, x: GMatrix) -> dict:
        """All nonzero bidegree components of ``x``."""
        y = self.to_adapted(x)
        n = self.dim()
        buckets = {}
        for i in range(n):
            ki = self.position_key[i]
            for j in range(n):
                if _is_zero_entry(y[i, j]):
                    continue
                kj = self.position_key[j]
                key = (ki[0] - kj[0], ki[1] - kj[1])
                buckets.setdefault(key, []).append((i, j))
        out = {}
        for key, cells in sorted(buckets.items()):
            keep = set(cells)
            rows = [
                [
                    y[i, j] if (i, j) in keep else (y[i, j] - y[i, j])
                    for j in range(n)
                ]
                for i in range(n)
            ]
            out[key] = self.from_adapted(GMatrix(rows))
        return out

    def vector_component(self, v, p: int, q: int):
        coords = self.t_inv @ GMatrix.from_columns([list(v)])
        n = self.dim()
        kept = [
            coords[i, 0] if self.position_key[i] == (p, q) else ZERO
            for i in range(n)
        ]
        return (self.t @ GMatrix.from_columns([kept])).column(0)

    def supported_on(self, x: GMatrix, predicate) -> bool:
        """Whether every nonzero adapted entry of ``x`` sits in a block whose
        bidegree satisfies ``predicate(p, q)``."""
        y = self.to_adapted(x)
        n = self.dim()
        for i in range(n):
            ki = self.position_key[i]
            for j in range(n):
                if _is_zero_entry(y[i, j]):
                    continue
                kj = self.position_key[j]
                if not predicate(ki[0] - kj[0], ki[1] - kj[1]):
                    return False
        return True

    def mask(self, x: GMatrix, predicate) -> GMatrix:
        """Keep only the blocks whose bidegree satisfies ``predicate``."""
        y = self.to_adapted(x)
        n = self.dim()
        rows = []
        for i in range(n):
            ki = self.position_key[i]
            row = []
            for j in range(n):
                kj = self.position_key[j]
                keep = predicate(ki[0] - kj[0], ki[1] - kj[1])
                row.append(y[i, j] if keep else y[i, j] - y[i, j])
            rows.append(row)
        return self.from_adapted(GMatrix(rows))


def _is_zero_entry(x) -> bool:
    z = getattr(x, "is_zero", None)
    return z() if callable(z) else x == 0


class MixedHodgeStructure:
    """A validated pair (W, F) on a polarized lattice, with cached splittings."""

    def __init__(
        self,
        lattice: PolarizedLattice,
        w: IncreasingFiltration,
        f: DecreasingFiltration,
    ):
        self.lattice = lattice
        self.w = w
        self.f = f
        self.report = validate_mhs(w, f, lattice)
        if not self.report.valid:
            raise InvalidMHS(
                "not a mixed Hodge structure", failures=self.report.failures
            )
        self._bigrading = None
        self._lie = None

    def bigrading(self) -> Bigrading:
        if self._bigrading is None:
            self._bigrading = deligne_bigrading_from(self.w, self.f)
        return self._bigrading

    def frame(self) -> AdaptedFrame:
        return self.bigrading().frame()

    def lie_bigrading(self) -> "LieBigrading":
        if self._lie is None:
            self._lie = LieBigrading(self)
        return self._lie


def deligne_bigrading(mhs: MixedHodgeStructure) -> Bigrading:
    return mhs.bigrading()


def kappa(x: GMatrix, y: GMatrix, scale: GScalar = ONE) -> GScalar:
    """The invariant pairing ``scale * trace(xy)`` on End(V).

    The trace form is proportional to the Killing form on the classical
    ``End(V, Q)``; the scale is configurable because only relative
    normalizations matter for the identities here.
    """
    acc = None
    for i in range(x.rows):
        row = x.row(i)
        for j, a in enumerate(row):
            if _is_zero_entry(a):
                continue
            b = y[j, i]
            if _is_zero_entry(b):
                continue
            term = a * b
            acc = term if acc is None else acc + term
    if acc is None:
        return ZERO
    return scale * acc


class LieBigrading:
    """The splitting ``g = (+) g^{p,q}`` induced on ``End(V, Q)`` plus the
    parabolic slices.

    ``f = (+)_{p>=0} g^{p,q}`` stabilizes F; ``f_perp = (+)_{p<0}`` is a
    nilpotent complement; ``m = (+)_{p,q<=0}`` stabilizes the reduced limit
    and its conjugate; ``m_lower`` drops the (0,0) part.
    """

    def __init__(self, mhs: MixedHodgeStructure):
        self.mhs = mhs
        self.lattice = mhs.lattice
        self.frame = mhs.frame()
        self._build_pieces()

    # -- construction ------------------------------------------------------

    def _build_pieces(self):
        lattice = self.lattice
        frame = self.frame
        n = lattice.weight
        qp = frame.t.transpose() @ lattice.q @ frame.t
        self.adapted_gram = qp
        if self._gram_is_block_monomial(qp, n):
            pieces = self._pieces_fast(qp, n)
        else:
            pieces = self._pieces_general()
        self.pieces = {
            k: v for k, v in sorted(pieces.items()) if v
        }
        total = sum(len(v) for v in self.pieces.values())
        if total != lattice.g_dimension():
            raise InvalidMHS(
                "Lie algebra bigrading does not fill g",
                found=total,
                expected=lattice.g_dimension(),
            )

    def _gram_is_block_monomial(self, qp: GMatrix, n: int) -> bool:
        """True if adapted Q pairs piece (p,q) only with (n-p, n-q)."""
        pos = self.frame.position_key
        for i in range(qp.rows):
            pi, qi = pos[i]
            for j in range(qp.cols):
                if qp[i, j].is_zero():
                    continue
                pj, qj = pos[j]
                if (pi + pj, qi + qj) != (n, n):
                    return False
        return True

    def _pieces_fast(self, qp: GMatrix, n: int):
        """Closed-form graded basis through ``S = Q'Y`` sym/skew, valid when
        the adapted Gram is dual-block supported."""
        frame = self.frame
        pos = frame.position_key
        dim = frame.dim()
        qp_inv = inverse(qp)
        symmetric = n % 2 == 1
        pieces = {}
        for i in range(dim):
            for j in range(i, dim):
                if i == j and not symmetric:
                    continue
                s = [[ZERO] * dim for _ in range(dim)]
                s[i][j] = ONE
                if i != j:
                    s[j][i] = ONE if symmetric else -ONE
                y = qp_inv @ GMatrix(s)
                x = frame.from_adapted(y)
                comps = frame.components(x)
                if len(comps) != 1:
                    # mixed support: fall back to the general path entirely
                    return self._pieces_general()
                ((key, mat),) = comps.items()
                pieces.setdefault(key, []).append(mat)
        return pieces

    def _pieces_general(self):
        """Graded pieces by exact subspace intersection in vec(End)."""
        lattice = self.lattice
        frame = self.frame
        d = lattice.dim
        g_vec = Subspace.from_columns(
            d * d, [b.vec() for b in lattice.g_basis()]
        )
        pieces = {}
        keys = set()
        for ki in frame.order:
            for kj in frame.order:
                keys.add((ki[0] - kj[0], ki[1] - kj[1]))
        for p, q in sorted(keys):
            cols = []
            for kj in frame.order:
                ki = (kj[0] + p, kj[1] + q)
                if ki not in frame.slices:
                    continue
                lo_i, hi_i = frame.slices[ki]
                lo_j, hi_j = frame.slices[kj]
                for i in range(lo_i, hi_i):
                    u = frame.t.column(i)
                    for j in range(lo_j, hi_j):
                        phi = frame.t_inv.row(j)
                        mat = GMatrix([[a * b for b in phi] for a in u])
                        cols.append(mat.vec())
            if not cols:
                continue
            end_pq = Subspace.from_columns(d * d, cols)
            inter = g_vec.intersect(end_pq)
            if inter.dim() == 0:
                continue
            pieces[(p, q)] = [
                GMatrix.unvec(c, d, d) for c in inter.basis_columns()
            ]
        return pieces

    # -- queries -----------------------------------------------------------

    def piece_basis(self, p: int, q: int) -> list:
        return list(self.pieces.get((p, q), []))

    def piece_subspace(self, p: int, q: int) -> Subspace:
        d = self.lattice.dim
        return Subspace.from_columns(
            d * d, [b.vec() for b in self.pieces.get((p, q), [])]
        )

    def dims(self) -> dict:
        return {k: len(v) for k, v in self.pieces.items()}

    def select(self, predicate) -> list:
        out = []
        for (p, q), mats in self.pieces.items():
            if predicate(p, q):
                out.extend(mats)
        return out

    def select_subspace(self, predicate) -> Subspace:
        d = self.lattice.dim
        return Subspace.from_columns(
            d * d, [b.vec() for b in self.select(predicate)]
        )

    def f_basis(self) -> list:
        return self.select(lambda p, q: p >= 0)

    def f_perp_basis(self) -> list:
        return self.select(lambda p, q: p < 0)

    def m_basis(self) -> list:
        return self.select(lambda p, q: p <= 0 and q <= 0)

    def m_lower_basis(self) -> list:
        return self.select(
            lambda p, q: p <= 0 and q <= 0 and (p, q) != (0, 0)
        )

    def f_subspace(self) -> Subspace:
        return self.select_subspace(lambda p, q: p >= 0)

    def f_perp_subspace(self) -> Subspace:
        return self.select_subspace(lambda p, q: p < 0)

    def in_piece(self, x: GMatrix, p: int, q: int) -> bool:
        """Membership of ``x`` in g^{p,q}: supported on a single bidegree and
        inside g."""
        if not self.lattice.in_g(x):
            return False
        return self.frame.supported_on(
            x, lambda a, b: (a, b) == (p, q)
        )

    def component(self, x: GMatrix, p: int, q: int) -> GMatrix:
        return self.frame.component(x, p, q)

    def in_f_perp(self, x: GMatrix) -> bool:
        return self.frame.supported_on(x, lambda p, q: p < 0)

    def in_m(self, x: GMatrix) -> bool:
        return self.frame.supported_on(x, lambda p, q: p <= 0 and q <= 0)


def induced_lie_bigrading(mhs: MixedHodgeStructure) -> LieBigrading:
    return mhs.lie_bigrading()
