"""Independent test oracles.

These deliberately avoid the construction paths they certify: the weight
axiom checker works with images/preimages instead of graded quotient maps,
the Grassmannian limit works on one-variable polynomial bases, and the Lie
grading oracle builds g from a raw kernel computation rather than the
closed-form basis.
"""

from __future__ import annotations

from lmhs.hodge import Quotient
from lmhs.linalg import (
    GMatrix,
    GScalar,
    NoSolution,
    ONE,
    Subspace,
    ZERO,
    kernel,
    solve_linear,
)
from lmhs.symbolic import LogPolynomial, w_symbol


def preimage(matrix: GMatrix, space: Subspace) -> Subspace:
    """{v : matrix v in space} computed by one solve."""
    dim = matrix.cols
    if space.dim() == space.ambient_dim:
        return Subspace.full(dim)
    # v in preimage iff matrix v reduces to zero modulo space
    cols = []
    for j in range(dim):
        img = matrix.column(j)
        res = list(img)
        for k, p in enumerate(space.pivots()):
            f = res[p]
            if f.is_zero():
                continue
            bc = space.basis.column(k)
            res = [x - f * y for x, y in zip(res, bc)]
        cols.append(res)
    return kernel(GMatrix.from_columns(cols))


def weight_axioms_independent(n_op: GMatrix, w, n: int) -> bool:
    """Axioms via sums/preimages (no quotient lifts):

    * N W_l <= W_{l-2};
    * surjectivity: N^k W_{n+k} + W_{n-k-1} = W_{n-k};
    * injectivity:  preimage of W_{n-k-1} under N^k meets W_{n+k} in
      exactly W_{n+k-1}.
    """
    lo, hi = w.min_level(), w.max_level()
    for l in range(lo, hi + 1):
        if not w.at(l - 2).contains(w.at(l).apply(n_op)):
            return False
    for k in range(1, hi - n + 1):
        nk = n_op.power(k)
        image = w.at(n + k).apply(nk)
        if image.sum(w.at(n - k - 1)) != w.at(n - k):
            return False
        pre = preimage(nk, w.at(n - k - 1))
        if pre.intersect(w.at(n + k)) != w.at(n + k - 1):
            return False
    return True


def grassmann_limit(columns, var) -> Subspace:
    """Limit at ``var -> 0`` of the span of polynomial columns (entries
    LogPolynomial in the single symbol ``var``)."""

    def valuation(poly: LogPolynomial) -> int:
        if poly.is_zero():
            return 10**9
        return min(
            dict(m).get(var, 0) for m in poly.terms
        )

    def shift(poly: LogPolynomial, amount: int) -> LogPolynomial:
        terms = {}
        for mono, coeff in poly.terms.items():
            d = dict(mono)
            d[var] = d.get(var, 0) - amount
            if d[var] == 0:
                del d[var]
            terms[tuple(sorted(d.items()))] = coeff
        return LogPolynomial(terms)

    def value_at_zero(poly: LogPolynomial) -> GScalar:
        return poly.substitute({var: LogPolynomial.constant(0)}).constant_term()

    cols = [list(c) for c in columns]
    ambient = len(cols[0]) if cols else 0
    for _ in range(200):
        normalized = []
        for col in cols:
            v = min(valuation(e) for e in col)
            if v >= 10**9:
                normalized.append(col)
                continue
            normalized.append([shift(e, v) for e in col])
        cols = normalized
        values = [[value_at_zero(e) for e in col] for col in cols]
        span = Subspace.from_columns(ambient, values)
        if span.dim() == len(cols):
            return span
        # find a dependency among the leading values and cancel it
        mat = GMatrix.from_columns(values)
        dep = kernel(mat).basis_columns()[0]
        pivot = max(
            (j for j, c in enumerate(dep) if not c.is_zero()),
            key=lambda j: 0,
        )
        new_col = [LogPolynomial() for _ in range(ambient)]
        for j, c in enumerate(dep):
            if c.is_zero():
                continue
            for i in range(ambient):
                new_col[i] = new_col[i] + cols[j][i].scale(c)
        cols[pivot] = new_col
    raise AssertionError("grassmann limit did not stabilize")


def lie_grading_independent(mhs):
    """Grade g by brute force: kernel of X -> X^T Q + Q X, then intersect
    with End^{p,q} built from outer products of the Deligne bases."""
    lattice = mhs.lattice
    d = lattice.dim
    cols = []
    basis_e = []
    for i in range(d):
        for j in range(d):
            e = GMatrix([[ONE if (r, c) == (i, j) else ZERO for c in range(d)] for r in range(d)])
            basis_e.append(e)
            cols.append((e.transpose() @ lattice.q + lattice.q @ e).vec())
    coeff_kernel = kernel(GMatrix.from_columns(cols))
    g_cols = []
    for coeffs in coeff_kernel.basis_columns():
        acc = GMatrix.zero(d, d)
        for c, e in zip(coeffs, basis_e):
            if c.is_zero():
                continue
            acc = acc + e.scale(c)
        g_cols.append(acc.vec())
    g_space = Subspace.from_columns(d * d, g_cols)
    bg = mhs.bigrading()
    frame = mhs.frame()
    pieces = {}
    for ki in bg.keys():
        for kj in bg.keys():
            key = (ki[0] - kj[0], ki[1] - kj[1])
            if key in pieces:
                continue
            cols = []
            for kb in bg.keys():
                ka = (kb[0] + key[0], kb[1] + key[1])
                if ka not in bg.pieces:
                    continue
                for u in bg.pieces[ka].basis_columns():
                    lo, hi = frame.slices[kb]
                    for j in range(lo, hi):
                        phi = frame.t_inv.row(j)
                        cols.append(
                            GMatrix([[a * b for b in phi] for a in u]).vec()
                        )
            if not cols:
                continue
            end_pq = Subspace.from_columns(d * d, cols)
            inter = g_space.intersect(end_pq)
            if inter.dim() > 0:
                pieces[key] = inter
    return g_space, pieces
