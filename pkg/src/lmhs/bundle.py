"""Input bundles and report emission for the CLI.

Input documents are JSON with a top-level ``schema`` key; matrix entries are
exact rational strings (``"3/2"``, ``"-1/2*i"``) -- numeric JSON is rejected
so precision can never silently degrade.  Reports are deterministic: fixed
key order, exact strings, no floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvariantError, LmhsError, SchemaError
from .hodge import (
    DecreasingFiltration,
    PolarizedLattice,
)
from .linalg import (
    GMatrix,
    GScalar,
    Subspace,
    format_scalar,
    kernel,
    parse_scalar,
)
from .symbolic import LogPolynomial, Symbol, int_symbol, t_symbol, w_symbol
from .weights import NilpotentCone

INPUT_SCHEMA = "lmhs-input/1"
REPORT_SCHEMA = "lmhs-report/1"


@dataclass
class Config:
    kappa_scale: GScalar = GScalar(1)
    seed: int = 0
    budget: int = 200
    truncation_order: int = 6

    @staticmethod
    def from_json(data, path="$.config") -> "Config":
        cfg = Config()
        if data is None:
            return cfg
        if not isinstance(data, dict):
            raise SchemaError("config must be an object", path)
        if "kappa_scale" in data:
            cfg.kappa_scale = _scalar(data["kappa_scale"], f"{path}.kappa_scale")
        for key in ("seed", "budget", "truncation_order"):
            if key in data:
                if not isinstance(data[key], int):
                    raise SchemaError(f"{key} must be an integer", f"{path}.{key}")
                setattr(cfg, key, data[key])
        return cfg

    def to_json(self):
        return {
            "kappa_scale": format_scalar(self.kappa_scale),
            "seed": self.seed,
            "budget": self.budget,
            "truncation_order": self.truncation_order,
        }


def _scalar(value, path) -> GScalar:
    if not isinstance(value, str):
        raise SchemaError(
            "matrix entries must be exact rational strings, not numbers",
            path,
        )
    try:
        return parse_scalar(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {value!r}: {exc}", path)


def parse_matrix(data, path, rows=None, cols=None) -> GMatrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError("matrix must be a list of rows", path)
    entries = [
        [_scalar(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)]
        for i, row in enumerate(data)
    ]
    mat = GMatrix(entries)
    if rows is not None and mat.rows != rows:
        raise SchemaError(f"expected {rows} rows, found {mat.rows}", path)
    if cols is not None and mat.cols != cols:
        raise SchemaError(f"expected {cols} cols, found {mat.cols}", path)
    return mat


def matrix_to_json(mat: GMatrix):
    return [[format_scalar(e) for e in row] for row in mat.entries]


def poly_entry_to_json(entry):
    if isinstance(entry, LogPolynomial):
        return entry.to_json()
    return format_scalar(entry)


def poly_matrix_to_json(mat: GMatrix):
    return [[poly_entry_to_json(e) for e in row] for row in mat.entries]


def parse_poly_entry(data, symbols, path) -> LogPolynomial:
    if isinstance(data, str):
        return LogPolynomial.constant(_scalar(data, path))
    if isinstance(data, dict):
        try:
            return LogPolynomial.from_json(data, symbols)
        except (InvariantError, ValueError) as exc:
            raise SchemaError(f"bad polynomial: {exc}", path)
    raise SchemaError("polynomial entries must be strings or term objects", path)


@dataclass
class XiData:
    form: str                 # "group" | "log"
    matrix: GMatrix           # entries LogPolynomial
    symbols: dict             # name -> Symbol


@dataclass
class DegenerationInput:
    lattice: PolarizedLattice
    nilpotents: list                  # list of (name, GMatrix)
    cones: dict                       # name -> tuple of indices into nilpotents
    limit_filtration: DecreasingFiltration | None
    xi: XiData | None
    monodromy_generators: list        # list of GMatrix
    config: Config
    q_derived: bool = False

    def cone(self, name=None) -> NilpotentCone:
        if not self.cones:
            raise InvariantError("no cones declared")
        if name is None:
            # prefer the cone covering all generators, else first by name
            full = [
                k
                for k, lbl in sorted(self.cones.items())
                if set(lbl) == set(range(len(self.nilpotents)))
            ]
            name = full[0] if full else sorted(self.cones)[0]
        if name not in self.cones:
            raise InvariantError(f"unknown cone {name!r}")
        label = self.cones[name]
        gens = [self.nilpotents[i][1] for i in label]
        return NilpotentCone(
            self.lattice, gens, label=tuple(i + 1 for i in label)
        )

    def all_cones(self):
        return {name: self.cone(name) for name in sorted(self.cones)}


def derive_q_from_monodromy(
    dim: int,
    weight: int,
    generators,
    limit_filtration_steps=None,
) -> GMatrix:
    """Solve ``g^T Q g = Q`` over all supplied monodromy generators with the
    ``(-1)^n`` parity, intersected with isotropy of the limit filtration
    (``Q(F^a, F^b) = 0`` for ``a + b > n``); fails unless the real solution
    space is one-dimensional up to scale."""
    sign = (-1) ** weight
    unknown_positions = [
        (i, j)
        for i in range(dim)
        for j in range(i, dim)
        if not (i == j and sign == -1)
    ]

    def q_of(coeffs):
        rows = [[GScalar(0)] * dim for _ in range(dim)]
        for c, (i, j) in zip(coeffs, unknown_positions):
            rows[i][j] = rows[i][j] + c
            if i != j:
                rows[j][i] = rows[j][i] + c * GScalar(sign)
        return GMatrix(rows)

    basis_mats = []
    for k in range(len(unknown_positions)):
        coeffs = [GScalar(0)] * len(unknown_positions)
        coeffs[k] = GScalar(1)
        basis_mats.append(q_of(coeffs))
    cols = []
    for bmat in basis_mats:
        col = []
        for g in generators:
            col.extend((g.transpose() @ bmat @ g - bmat).vec())
        if limit_filtration_steps is not None:
            f = limit_filtration_steps
            for a in f.support():
                for b in f.support():
                    if a + b <= weight:
                        continue
                    for u in f.at(a).basis_columns():
                        for v in f.at(b).basis_columns():
                            val = (
                                GMatrix.from_columns([list(u)]).transpose()
                                @ bmat
                                @ GMatrix.from_columns([list(v)])
                            )[0, 0]
                            col.append(val)
                            col.append(val.conjugate())
        cols.append(col)
    if not cols or not cols[0]:
        raise InvariantError("no constraints available to derive Q")
    sol = kernel(GMatrix.from_columns(cols))
    # real points of the solution space
    real_cols = []
    for w in sol.basis_columns():
        wbar = [x.conjugate() for x in w]
        real_cols.append([x + y for x, y in zip(w, wbar)])
        real_cols.append(
            [GScalar(0, -1) * (x - y) for x, y in zip(w, wbar)]
        )
    real_space = Subspace.from_columns(len(unknown_positions), real_cols)
    if real_space.dim() != 1:
        raise InvariantError(
            "invariant-form space is not one-dimensional up to scale",
            dimension=real_space.dim(),
        )
    coeffs = real_space.basis_columns()[0]
    # normalize: first nonzero entry positive integer-cleared
    denom = 1
    for c in coeffs:
        denom = denom * c.re.denominator // _gcd(denom, c.re.denominator)
    coeffs = [c * GScalar(denom) for c in coeffs]
    lead = next(c for c in coeffs if not c.is_zero())
    if lead.re < 0:
        coeffs = [-c for c in coeffs]
    q = q_of(coeffs)
    return q


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def parse_subspace(data, dim, path) -> Subspace:
    if data == "full":
        return Subspace.full(dim)
    if data == "zero":
        return Subspace.zero(dim)
    if not isinstance(data, list):
        raise SchemaError("subspace must be 'full', 'zero' or column list", path)
    cols = []
    for j, col in enumerate(data):
        if not isinstance(col, list) or len(col) != dim:
            raise SchemaError(
                f"column {j} must be a list of {dim} entries", path
            )
        cols.append([_scalar(x, f"{path}[{j}][{i}]") for i, x in enumerate(col)])
    return Subspace.from_columns(dim, cols)


def parse_input(source) -> DegenerationInput:
    """Parse and validate a degeneration bundle.

    ``source`` may be a dict, JSON bytes/string, or a filesystem path.
    """
    if isinstance(source, (bytes, str)) and not str(source).lstrip().startswith(
        ("{", "[")
    ):
        with open(source, "rb") as handle:
            source = handle.read()
    if isinstance(source, (bytes, str)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "$")
    else:
        data = source
    if not isinstance(data, dict):
        raise SchemaError("document must be an object", "$")
    if data.get("schema") != INPUT_SCHEMA:
        raise SchemaError(
            f"unsupported schema {data.get('schema')!r}; expected {INPUT_SCHEMA}",
            "$.schema",
        )
    lat = data.get("lattice")
    if not isinstance(lat, dict):
        raise SchemaError("lattice section is required", "$.lattice")
    dim = lat.get("dim")
    weight = lat.get("weight")
    if not isinstance(dim, int) or dim <= 0:
        raise SchemaError("lattice.dim must be a positive integer", "$.lattice.dim")
    if not isinstance(weight, int) or weight < 0:
        raise SchemaError(
            "lattice.weight must be a nonnegative integer", "$.lattice.weight"
        )
    config = Config.from_json(data.get("config"))
    nilpotents = []
    for k, item in enumerate(data.get("nilpotents", [])):
        if isinstance(item, dict):
            name = item.get("name", f"N{k + 1}")
            mat = parse_matrix(
                item.get("matrix"), f"$.nilpotents[{k}].matrix", dim, dim
            )
        else:
            name = f"N{k + 1}"
            mat = parse_matrix(item, f"$.nilpotents[{k}]", dim, dim)
        nilpotents.append((name, mat))
    monodromy = [
        parse_matrix(m, f"$.monodromy_generators[{k}]", dim, dim)
        for k, m in enumerate(data.get("monodromy_generators", []))
    ]
    limit = None
    if "limit_filtration" in data:
        steps_raw = data["limit_filtration"]
        if not isinstance(steps_raw, dict):
            raise SchemaError(
                "limit_filtration must map levels to subspaces",
                "$.limit_filtration",
            )
        steps = {}
        for key, value in steps_raw.items():
            try:
                p = int(key)
            except ValueError:
                raise SchemaError(
                    f"filtration level {key!r} is not an integer",
                    "$.limit_filtration",
                )
            steps[p] = parse_subspace(
                value, dim, f"$.limit_filtration.{key}"
            )
        try:
            limit = DecreasingFiltration(dim, steps)
        except (InvariantError, LmhsError) as exc:
            raise SchemaError(
                f"invalid limit filtration: {exc}", "$.limit_filtration"
            )
    q_raw = lat.get("q", "derive-from-monodromy")
    q_derived = False
    if q_raw == "derive-from-monodromy":
        if not monodromy and not nilpotents:
            raise SchemaError(
                "derive-from-monodromy needs monodromy generators",
                "$.lattice.q",
            )
        from .linalg import exp_nilpotent

        gens = list(monodromy)
        if not gens:
            gens = [exp_nilpotent(mat) for _, mat in nilpotents]
        try:
            q = derive_q_from_monodromy(dim, weight, gens, limit)
        except InvariantError as exc:
            raise SchemaError(str(exc), "$.lattice.q")
        q_derived = True
    else:
        q = parse_matrix(q_raw, "$.lattice.q", dim, dim)
    hodge_numbers = lat.get("hodge_numbers")
    if hodge_numbers is not None:
        if not isinstance(hodge_numbers, list) or not all(
            isinstance(h, int) and h >= 0 for h in hodge_numbers
        ):
            raise SchemaError(
                "hodge_numbers must be nonnegative integers",
                "$.lattice.hodge_numbers",
            )
        hodge_numbers = tuple(hodge_numbers)
    try:
        lattice = PolarizedLattice(
            dim=dim, weight=weight, q=q, hodge_numbers=hodge_numbers
        )
    except (InvariantError, LmhsError) as exc:
        raise InvariantError(f"lattice invariant failed: {exc}")
    cones_raw = data.get("cones")
    cones = {}
    if cones_raw is None:
        if nilpotents:
            cones["sigma"] = tuple(range(len(nilpotents)))
    else:
        if not isinstance(cones_raw, dict):
            raise SchemaError("cones must map names to index lists", "$.cones")
        for name, idxs in cones_raw.items():
            if not isinstance(idxs, list) or not all(
                isinstance(i, int) and 0 <= i < len(nilpotents) for i in idxs
            ):
                raise SchemaError(
                    f"cone {name!r} must list nilpotent indices",
                    f"$.cones.{name}",
                )
            cones[name] = tuple(idxs)
    xi = None
    if "xi" in data:
        xi_raw = data["xi"]
        if not isinstance(xi_raw, dict):
            raise SchemaError("xi must be an object", "$.xi")
        form = xi_raw.get("form", "group")
        if form not in ("group", "log"):
            raise SchemaError("xi.form must be 'group' or 'log'", "$.xi.form")
        symbols = {}
        for name, kind in sorted(xi_raw.get("symbols", {}).items()):
            if kind == "w":
                symbols[name] = w_symbol(name)
            elif kind == "int":
                symbols[name] = int_symbol(name)
            else:
                raise SchemaError(
                    f"xi symbol kind must be 'w' or 'int', got {kind!r}",
                    f"$.xi.symbols.{name}",
                )
        for i in range(1, len(nilpotents) + 1):
            symbols[f"t{i}"] = t_symbol(i)
        rows_raw = xi_raw.get("matrix")
        if not isinstance(rows_raw, list):
            raise SchemaError("xi.matrix must be a matrix", "$.xi.matrix")
        rows = []
        for i, row in enumerate(rows_raw):
            rows.append(
                [
                    parse_poly_entry(e, symbols, f"$.xi.matrix[{i}][{j}]")
                    for j, e in enumerate(row)
                ]
            )
        xi_mat = GMatrix(rows)
        if xi_mat.shape() != (dim, dim):
            raise SchemaError("xi.matrix must be dim x dim", "$.xi.matrix")
        xi = XiData(form=form, matrix=xi_mat, symbols=symbols)
    bundle = DegenerationInput(
        lattice=lattice,
        nilpotents=nilpotents,
        cones=cones,
        limit_filtration=limit,
        xi=xi,
        monodromy_generators=monodromy,
        config=config,
        q_derived=q_derived,
    )
    # cone invariants (commuting, nilpotent, Q-isometry) checked eagerly so
    # parse failures carry precise locations
    for name in sorted(cones):
        try:
            bundle.cone(name)
        except (InvariantError, LmhsError) as exc:
            raise InvariantError(
                f"cone {name!r} invariant failed: {exc}"
            )
    return bundle


@dataclass
class AnalysisReport:
    command: str
    verdict_code: str                 # "ok" | "negative"
    results: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "verdict_code": self.verdict_code,
            "results": self.results,
        }


def _stringify(value):
    if isinstance(value, GScalar):
        return format_scalar(value)
    if isinstance(value, GMatrix):
        return poly_matrix_to_json(value)
    if isinstance(value, LogPolynomial):
        return value.to_json()
    if isinstance(value, Fraction):
        return format_scalar(GScalar(value))
    if isinstance(value, dict):
        return {str(k): _stringify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    return value


def emit_report(report: AnalysisReport, fmt: str = "json") -> bytes:
    data = _stringify(report.to_json_dict())
    if fmt == "json":
        return (
            json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"
        ).encode("utf-8")
    if fmt == "text":
        return _render_text(report).encode("utf-8")
    raise InvariantError(f"unknown report format {fmt!r}")


def _render_text(report: AnalysisReport) -> str:
    lines = [f"lmhs {report.command}: {report.verdict_code}"]
    results = report.results
    if "diamond" in results:
        lines.append("Hodge-Deligne diamond (rows q desc, cols p asc):")
        lines.extend(render_diamond(results["diamond"]))
    for key in sorted(results):
        if key == "diamond":
            continue
        value = _stringify(results[key])
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def render_diamond(dims: dict) -> list:
    """Aligned grid of the bigraded dimensions; keys are ``"p,q"`` strings
    or (p, q) pairs."""
    table = {}
    for key, value in dims.items():
        if isinstance(key, str):
            p_txt, q_txt = key.split(",")
            table[(int(p_txt), int(q_txt))] = value
        else:
            table[tuple(key)] = value
    if not table:
        return ["  (empty)"]
    ps = sorted({p for p, _ in table})
    qs = sorted({q for _, q in table}, reverse=True)
    width = max(3, max(len(str(v)) for v in table.values())) + 1
    lines = []
    header = "q\\p |" + "".join(str(p).rjust(width) for p in ps)
    lines.append("  " + header)
    lines.append("  " + "-" * len(header))
    for q in qs:
        row = f"{str(q).rjust(3)} |"
        for p in ps:
            row += str(table.get((p, q), ".")).rjust(width)
        lines.append("  " + row)
    return lines
