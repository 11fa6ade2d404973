"""Exact multivariate polynomials with formal logarithm symbols.

``LogPolynomial`` is a sparse Laurent-free polynomial ring over the Gaussian
rationals in four classes of commuting symbols:

* ``t`` -- coordinates vanishing on boundary strata (``t1, t2, ...``);
* ``w`` -- holomorphic coordinates, including opaque function symbols;
* ``log`` -- the multivalued ``l_i = log(t_i) / 2 pi i``; the deck shift
  ``T_i`` acts by ``l_i -> l_i + 1`` and is a ring automorphism;
* ``int`` -- parameters known to take integer values (used to decide
  exponential equalities such as ``exp(2 pi i (c - a b)) = 1``);
* a single reserved ``unit`` symbol for ``2 pi i`` itself, the only symbol
  allowed negative exponents (it enters through logarithmic derivatives and
  is never numerically evaluated).

``TauExpression`` denotes ``exp(2 pi i P) * prod t_i^{m_i}`` with ``P``
single-valued; two expressions are equal when the monomials agree and the
exponents differ by an integer-valued combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantError, NotIntegral
from .linalg import GMatrix, GScalar, ONE, ZERO

_KINDS = ("t", "w", "log", "int", "unit")


@dataclass(frozen=True, order=True)
class Symbol:
    name: str
    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvariantError(f"unknown symbol kind {self.kind!r}")


def t_symbol(i: int) -> Symbol:
    return Symbol(f"t{i}", "t", i)


def log_symbol(i: int) -> Symbol:
    return Symbol(f"l{i}", "log", i)


def w_symbol(name: str) -> Symbol:
    return Symbol(name, "w")


def int_symbol(name: str) -> Symbol:
    return Symbol(name, "int")


TWO_PI_I = Symbol("two_pi_i", "unit")


def _normalize_monomial(pairs):
    acc = {}
    for sym, exp in pairs:
        if exp == 0:
            continue
        acc[sym] = acc.get(sym, 0) + exp
    for sym, exp in list(acc.items()):
        if exp == 0:
            del acc[sym]
        elif exp < 0 and sym.kind != "unit":
            raise InvariantError(
                f"negative exponent on non-unit symbol {sym.name}"
            )
    return tuple(sorted(acc.items()))


class LogPolynomial:
    """Sparse exact polynomial; immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = GScalar.coerce(coeff)
            if coeff.is_zero():
                continue
            clean[mono] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LogPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(value) -> "LogPolynomial":
        value = GScalar.coerce(value)
        return LogPolynomial({(): value})

    @staticmethod
    def variable(sym: Symbol, exp: int = 1) -> "LogPolynomial":
        return LogPolynomial({_normalize_monomial([(sym, exp)]): ONE})

    @staticmethod
    def coerce(value) -> "LogPolynomial":
        if isinstance(value, LogPolynomial):
            return value
        if isinstance(value, Symbol):
            return LogPolynomial.variable(value)
        if isinstance(value, (int, Fraction, GScalar)):
            return LogPolynomial.constant(value)
        raise TypeError(f"cannot coerce {value!r} to LogPolynomial")

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self) -> GScalar:
        return self.terms.get((), ZERO)

    def is_single_valued(self) -> bool:
        """Degree zero in every log symbol."""
        return all(
            sym.kind != "log" for mono in self.terms for sym, _ in mono
        )

    def symbols(self):
        out = set()
        for mono in self.terms:
            for sym, _ in mono:
                out.add(sym)
        return out

    def degree_in(self, sym: Symbol) -> int:
        deg = 0
        for mono in self.terms:
            for s, e in mono:
                if s == sym:
                    deg = max(deg, e)
        return deg

    def jet_degree(self, mono) -> int:
        return sum(e for s, e in mono if s.kind in ("t", "w"))

    def max_jet_degree(self) -> int:
        return max((self.jet_degree(m) for m in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        try:
            other = LogPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            cur = terms.get(mono)
            terms[mono] = coeff if cur is None else cur + coeff
        return LogPolynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return LogPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = LogPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = LogPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = LogPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _normalize_monomial(list(m1) + list(m2))
                coeff = c1 * c2
                cur = terms.get(mono)
                terms[mono] = coeff if cur is None else cur + coeff
        return LogPolynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvariantError("negative polynomial power")
        result = LogPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, factor) -> "LogPolynomial":
        factor = GScalar.coerce(factor)
        return LogPolynomial(
            {m: factor * c for m, c in self.terms.items()}
        )

    # -- ring maps ---------------------------------------------------------

    def substitute(self, mapping: dict) -> "LogPolynomial":
        """Replace symbols by polynomials (or scalars)."""
        mapping = {
            sym: LogPolynomial.coerce(val) for sym, val in mapping.items()
        }
        total = LogPolynomial()
        for mono, coeff in self.terms.items():
            term = LogPolynomial.constant(coeff)
            for sym, exp in mono:
                if sym in mapping:
                    if exp < 0:
                        raise InvariantError(
                            "cannot substitute into a negative unit power"
                        )
                    term = term * (mapping[sym] ** exp)
                else:
                    term = term * LogPolynomial({((sym, exp),): ONE})
            total = total + term
        return total

    def shift_log(self, i: int, amount: int = 1) -> "LogPolynomial":
        """The deck transformation ``T_i^amount``: ``l_i -> l_i + amount``."""
        sym = log_symbol(i)
        if all(s != sym for m in self.terms for s, _ in m):
            return self
        replacement = LogPolynomial.variable(sym) + LogPolynomial.constant(
            amount
        )
        return self.substitute({sym: replacement})

    def truncate(self, order: int | None) -> "LogPolynomial":
        """Drop terms of jet degree (total t/w degree) above ``order``."""
        if order is None:
            return self
        return LogPolynomial(
            {
                m: c
                for m, c in self.terms.items()
                if self.jet_degree(m) <= order
            }
        )

    def derivative(self, sym: Symbol) -> "LogPolynomial":
        terms = {}
        for mono, coeff in self.terms.items():
            for idx, (s, e) in enumerate(mono):
                if s != sym:
                    continue
                rest = list(mono)
                if e == 1:
                    rest.pop(idx)
                else:
                    rest[idx] = (s, e - 1)
                mono2 = _normalize_monomial(rest)
                add = coeff * GScalar(e)
                cur = terms.get(mono2)
                terms[mono2] = add if cur is None else cur + add
        return LogPolynomial(terms)

    def dlog_t(self, i: int) -> "LogPolynomial":
        """Apply the log vector field ``t_i d/dt_i``; the chain rule on
        ``l_i`` contributes a formal ``(2 pi i)^{-1}``."""
        t_part = (
            LogPolynomial.variable(t_symbol(i)) * self.derivative(t_symbol(i))
        )
        l_part = self.derivative(log_symbol(i)) * LogPolynomial.variable(
            TWO_PI_I, -1
        )
        return t_part + l_part

    def restrict_t0(self, indices) -> "LogPolynomial":
        """Set ``t_i = 0`` for ``i`` in ``indices``; requires the designated
        ``l_i`` to be absent."""
        idx = set(indices)
        for mono in self.terms:
            for s, _ in mono:
                if s.kind == "log" and s.index in idx:
                    raise InvariantError(
                        f"restriction would evaluate log symbol l{s.index}"
                    )
        return self.substitute(
            {t_symbol(i): LogPolynomial.constant(0) for i in idx}
        )

    # -- extraction --------------------------------------------------------

    def log_linear_part(self):
        """Split ``P = sum_i c_i l_i + rest``.

        Returns (``{i: c_i}``, rest); raises if any log symbol appears
        nonlinearly or with a non-constant coefficient.
        """
        coeffs = {}
        rest = {}
        for mono, coeff in self.terms.items():
            logs = [(s, e) for s, e in mono if s.kind == "log"]
            if not logs:
                rest[mono] = coeff
                continue
            if len(logs) > 1 or logs[0][1] != 1 or len(mono) != 1:
                raise InvariantError(
                    "log symbols enter nonlinearly", monomial=str(mono)
                )
            i = logs[0][0].index
            coeffs[i] = coeffs.get(i, ZERO) + coeff
        return coeffs, LogPolynomial(rest)

    def coefficient(self, mono) -> GScalar:
        return self.terms.get(_normalize_monomial(mono), ZERO)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        try:
            other = LogPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in sorted(self.terms.items()):
            factors = []
            ctext = str(coeff)
            for s, e in mono:
                factors.append(s.name if e == 1 else f"{s.name}^{e}")
            if factors and coeff == ONE:
                parts.append("*".join(factors))
            elif factors:
                parts.append(f"({ctext})*" + "*".join(factors))
            else:
                parts.append(f"({ctext})")
        return " + ".join(parts)

    __repr__ = __str__

    # -- serialization -----------------------------------------------------

    def to_json(self):
        out = []
        for mono, coeff in sorted(self.terms.items()):
            out.append(
                [str(coeff), {s.name: e for s, e in mono}]
            )
        return {"terms": out}

    @staticmethod
    def from_json(data, symbols: dict) -> "LogPolynomial":
        terms = {}
        for coeff_text, mono_map in data.get("terms", []):
            pairs = []
            for name, exp in mono_map.items():
                if name not in symbols:
                    raise InvariantError(f"unknown symbol {name!r}")
                pairs.append((symbols[name], int(exp)))
            terms[_normalize_monomial(pairs)] = GScalar.coerce(coeff_text)
        return LogPolynomial(terms)


P_ZERO = LogPolynomial()
P_ONE = LogPolynomial.constant(1)


def is_integer_valued(poly: LogPolynomial) -> bool:
    """Whether the polynomial takes integer values for all integer symbol
    assignments: every monomial must involve only ``int`` symbols and carry
    an integer coefficient."""
    for mono, coeff in poly.terms.items():
        if not coeff.is_rational_integer():
            return False
        if any(s.kind != "int" for s, _ in mono):
            return False
    return True


@dataclass(frozen=True)
class TauExpression:
    """``exp(2 pi i * exponent) * prod_i t_i^{monomial[i]}``."""

    exponent: LogPolynomial
    monomial: tuple  # sorted tuple of (t-index, integer power)

    @staticmethod
    def from_exponent(poly: LogPolynomial) -> "TauExpression":
        """Interpret ``exp(2 pi i P)``, folding the integer-linear log
        part into monomial powers ``exp(2 pi i l_i) = t_i``."""
        coeffs, rest = poly.log_linear_part()
        mono = {}
        for i, c in sorted(coeffs.items()):
            if not c.is_rational_integer():
                raise NotIntegral(
                    f"log coefficient {c} at index {i} is not an integer"
                )
            if int(c.re):
                mono[i] = int(c.re)
        if not rest.is_single_valued():
            raise InvariantError("residual exponent is multivalued")
        return TauExpression(
            exponent=rest, monomial=tuple(sorted(mono.items()))
        )

    def divisor(self) -> dict:
        return dict(self.monomial)

    def vanishes_on(self, i: int) -> bool:
        return dict(self.monomial).get(i, 0) > 0

    def __mul__(self, other: "TauExpression") -> "TauExpression":
        mono = dict(self.monomial)
        for i, e in other.monomial:
            mono[i] = mono.get(i, 0) + e
            if mono[i] == 0:
                del mono[i]
        return TauExpression(
            exponent=self.exponent + other.exponent,
            monomial=tuple(sorted(mono.items())),
        )

    def inverse(self) -> "TauExpression":
        return TauExpression(
            exponent=-self.exponent,
            monomial=tuple((i, -e) for i, e in self.monomial),
        )

    def equals(self, other: "TauExpression") -> bool:
        """Equality as functions: same monomial, exponents differing by an
        integer-valued combination."""
        if self.monomial != other.monomial:
            return False
        return is_integer_valued(self.exponent - other.exponent)

    def to_json(self):
        return {
            "exponent": self.exponent.to_json(),
            "monomial": {f"t{i}": e for i, e in self.monomial},
        }

    def __str__(self):
        factors = [f"t{i}^{e}" if e != 1 else f"t{i}" for i, e in self.monomial]
        body = "*".join(factors) if factors else "1"
        if self.exponent.is_zero():
            return body
        return f"{body} * exp(2pi*i*({self.exponent}))"


# -- polynomial matrices ----------------------------------------------------


def poly_matrix(entries) -> GMatrix:
    return GMatrix(
        [[LogPolynomial.coerce(e) for e in row] for row in entries]
    )


def matrix_of_scalars(mat: GMatrix) -> GMatrix:
    """Lift a GScalar matrix into the polynomial ring entrywise."""
    return mat.map(lambda e: LogPolynomial.coerce(e))


def matrix_substitute(mat: GMatrix, mapping: dict) -> GMatrix:
    return mat.map(lambda e: LogPolynomial.coerce(e).substitute(mapping))


def matrix_shift_log(mat: GMatrix, i: int, amount: int = 1) -> GMatrix:
    return mat.map(lambda e: LogPolynomial.coerce(e).shift_log(i, amount))


def matrix_truncate(mat: GMatrix, order: int | None) -> GMatrix:
    if order is None:
        return mat
    return mat.map(lambda e: LogPolynomial.coerce(e).truncate(order))


def matrix_constant_part(mat: GMatrix) -> GMatrix:
    return mat.map(lambda e: LogPolynomial.coerce(e).constant_term())


def invert_poly_matrix(
    mat: GMatrix, truncation: int | None = None
) -> GMatrix:
    """Invert a polynomial matrix whose constant part is invertible.

    Exact (finite Neumann series) when the varying part is nilpotent as a
    matrix; otherwise the varying part must be log-free with positive jet
    degree and a truncation order must be given.
    """
    from .linalg import inverse as scalar_inverse

    n = mat.rows
    c0 = matrix_constant_part(mat)
    c0_inv = matrix_of_scalars(scalar_inverse(c0))
    p = matrix_of_scalars(GMatrix.identity(n)) - (c0_inv @ mat)
    # p = 1 - C0^{-1} M; M^{-1} = (sum p^k) C0^{-1}
    result = matrix_of_scalars(GMatrix.identity(n))
    term = matrix_of_scalars(GMatrix.identity(n))
    step = 0
    while True:
        term = term @ p
        if truncation is not None:
            term = matrix_truncate(term, truncation)
        if term.is_zero():
            break
        step += 1
        result = result + term
        if step > n and truncation is None:
            raise InvariantError(
                "matrix inverse is not polynomial; supply a truncation order"
            )
        if truncation is not None and step > max(4, 4 * truncation + 4):
            raise InvariantError("jet inversion did not converge")
    return result @ c0_inv
