"""The two-dimensional multiplicative left Hom-Leibniz algebras and their reference tables.

Each family ``L_i^j`` (subscript = position in its list, superscript = the
alpha-family) is stored with up to three variants:

``listed``
    the data of the classification list;
``header``
    the data printed above the centroid/derivation tables, where it differs;
``table``
    the data the tables are actually verified against.  For every family but
    ``L_1^6`` this is the ``header`` (or, if absent, ``listed``) data.  For
    ``L_1^6`` the printed header (alpha = diag(0, 1)) is only multiplicative
    when ``t1 = 0`` and does not reproduce the table; the table is reproduced by
    the classification-list twisting map alpha(e2) = e1 with the header's
    parameter names (``z1`` for [e2, e1], ``t1`` for [e2, e2]).

Table entries are kept as :class:`PatternMatrix` strings such as
``"[[c1, c2], [0, c1]]"`` or ``"[[c1, 0], [0, c1/a^r]]"``; free symbols are
``c1, c2, d1, d2`` and parameter names plus ``r`` may appear in coefficients.
"""

from __future__ import annotations

import ast
import itertools
import operator
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Mapping

from .exactla import GF, QQ, Field, Matrix, Subspace
from .homalg import HomAlgebra, PreconditionError
from .opspaces import (
    centroid_space,
    derivation_space,
    is_characteristically_nilpotent,
    is_small_centroid,
)

DEFAULT_SAMPLES = (2, 3, 5)
FREE_SYMBOLS = ("c1", "c2", "d1", "d2")


class ConstraintError(ValueError):
    """A parameter value is excluded for the requested family."""


class UnknownAlgebraError(KeyError):
    pass


class UncoveredRowError(LookupError):
    """No table row covers the requested (r, parameters)."""


# ---------------------------------------------------------------------------
# pattern matrices
# ---------------------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _linear_form(node, env: Mapping, field: Field) -> dict:
    """Evaluate an expression into ``{symbol: coefficient}``; key ``None`` is the constant."""
    if isinstance(node, ast.Expression):
        return _linear_form(node.body, env, field)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return {None: field(node.value)}
    if isinstance(node, ast.Name):
        if node.id in FREE_SYMBOLS:
            return {node.id: field.one}
        if node.id in env:
            return {None: field(env[node.id])}
        raise KeyError(f"unbound name {node.id!r} in pattern")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _linear_form(node.operand, env, field)
        return {k: -v for k, v in inner.items()} if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _scalar(_linear_form(node.left, env, field))
            exp = _scalar(_linear_form(node.right, env, field))
            return {None: base ** int(exp)}
        left = _linear_form(node.left, env, field)
        right = _linear_form(node.right, env, field)
        if isinstance(node.op, (ast.Add, ast.Sub)):
            out = dict(left)
            for k, v in right.items():
                out[k] = _BINOPS[type(node.op)](out.get(k, field.zero), v)
            return out
        if isinstance(node.op, ast.Mult):
            if set(left) == {None}:
                left, right = right, left
            s = _scalar(right)
            return {k: v * s for k, v in left.items()}
        if isinstance(node.op, ast.Div):
            s = _scalar(right)
            return {k: v / s for k, v in left.items()}
    raise ValueError(f"unsupported pattern syntax: {ast.dump(node)}")


def _scalar(form: dict):
    if set(form) - {None}:
        raise ValueError("pattern coefficient depends on a free symbol")
    return form.get(None)


@dataclass(frozen=True)
class PatternMatrix:
    """A table entry: an n x n matrix of linear expressions in free symbols."""

    text: str

    @property
    def entries(self) -> list[list[str]]:
        node = ast.parse(self.text.replace("^", "**"), mode="eval").body
        if not isinstance(node, ast.List):
            raise ValueError("pattern must be a nested list")
        return [[ast.unparse(e) for e in row.elts] for row in node.elts]

    @property
    def n(self) -> int:
        return len(self.entries)

    def symbols(self) -> list[str]:
        found = {s for s in FREE_SYMBOLS for row in self.entries for e in row if s in _names(e)}
        return sorted(found)

    def coefficient_matrices(self, field: Field, env: Mapping) -> dict:
        """``{symbol: Matrix}`` so that the pattern is sum(symbol * matrix)."""
        n = self.n
        forms = [
            [_linear_form(ast.parse(e, mode="eval"), env, field) for e in row] for row in self.entries
        ]
        out = {}
        for s in self.symbols():
            out[s] = Matrix.from_rows(field, [[f.get(s, field.zero) for f in row] for row in forms], n)
        for row in forms:
            for f in row:
                if f.get(None):
                    raise ValueError("pattern entries must be homogeneous linear forms")
        return out

    def to_subspace(self, field: Field, env: Mapping) -> Subspace:
        mats = self.coefficient_matrices(field, env)
        return Subspace.span(field, self.n ** 2, [m.flatten() for m in mats.values()])

    def __str__(self):
        return self.text


def _names(expr: str) -> set:
    return {n.id for n in ast.walk(ast.parse(expr, mode="eval")) if isinstance(n, ast.Name)}


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Param:
    name: str
    excluded: tuple = ()
    samples: tuple = DEFAULT_SAMPLES


@dataclass(frozen=True)
class Variant:
    params: tuple  # of Param
    brackets: Callable  # params -> {(i, j): {k: coeff}} (1-based)
    alpha: Callable  # params -> rows of alpha

    def param_names(self) -> list[str]:
        return [p.name for p in self.params]


@dataclass(frozen=True)
class TableRow:
    r_min: int
    r_max: int | None
    centroid: PatternMatrix
    derivations: PatternMatrix
    small: bool | None = None
    cn: bool | None = None
    condition: Callable | None = None
    condition_text: str = ""
    disputed: bool = False

    def covers(self, r: int, params: Mapping) -> bool:
        if r < self.r_min or (self.r_max is not None and r > self.r_max):
            return False
        return self.condition is None or self.condition(params)

    @property
    def r_text(self) -> str:
        if self.r_max is None:
            return "r ∈ ℕ" if self.r_min == 0 else f"r ≥ {self.r_min}"
        if self.r_min == self.r_max:
            return f"r = {self.r_min}"
        return f"{self.r_min} ≤ r ≤ {self.r_max}"


@dataclass(frozen=True)
class ClassifiedAlgebra:
    id: str
    variants: dict
    rows: tuple  # TableRows for the table variant
    symmetric: bool  # annotation attached to the classification list
    table_variant: str = "table"
    disputed_rows: tuple = ()  # rows stored for reference, never asserted

    def variant(self, name: str) -> Variant:
        if name == "table" and "table" not in self.variants:
            name = "header" if "header" in self.variants else "listed"
        if name == "header" and "header" not in self.variants:
            name = "listed"
        try:
            return self.variants[name]
        except KeyError:
            raise UnknownAlgebraError(f"{self.id} has no variant {name!r}") from None

    def sample_params(self, variant: str = "table") -> list[dict]:
        v = self.variant(variant)
        pools = [[s for s in p.samples if s not in p.excluded] for p in v.params]
        return [dict(zip(v.param_names(), combo)) for combo in itertools.product(*pools)]


def _diag(x, y):
    return [[x, 0], [0, y]]


_ID = [[1, 0], [0, 1]]
_NIL = [[0, 1], [0, 0]]  # alpha(e1) = 0, alpha(e2) = e1
_E2 = [[0, 0], [0, 1]]

_P = PatternMatrix


def _const(brackets, alpha):
    return Variant((), lambda p: brackets, lambda p: alpha)


def _build_catalog() -> dict:
    cat = {}

    def add(a):
        cat[a.id] = a

    g_nil_id = _P("[[c1, c2], [0, c1]]")
    g_e2 = _P("[[0, 0], [0, c2]]")
    g_nil = _P("[[0, c2], [0, 0]]")
    d_e12 = _P("[[0, d2], [0, 0]]")
    zero_d = _P("[[0, 0], [0, 0]]")

    add(ClassifiedAlgebra(
        "L_1^1", {"listed": _const({(2, 1): {1: 1}, (2, 2): {1: 1}}, _ID)},
        (TableRow(0, None, g_nil_id, _P("[[d1, d1], [0, 0]]"), False, True),), symmetric=False))
    add(ClassifiedAlgebra(
        "L_2^1", {"listed": _const({(2, 2): {1: 1}}, _ID)},
        (TableRow(0, None, g_nil_id, _P("[[d1, d2], [0, d1/2]]"), True, True),), symmetric=True))
    add(ClassifiedAlgebra(
        "L_3^1", {"listed": _const({(2, 1): {1: 1}}, _ID)},
        (TableRow(0, None, g_nil_id, _P("[[d1, 0], [0, 0]]"), False, True),), symmetric=True))
    add(ClassifiedAlgebra(
        "L_4^1", {"listed": _const({(1, 2): {1: 1}, (2, 1): {1: -1}}, _ID)},
        (TableRow(0, None, _P("[[c1, 0], [0, c1]]"), _P("[[d1, d2], [0, 0]]"), True, False),), symmetric=True))
    add(ClassifiedAlgebra(
        "L_1^2", {"listed": _const({(2, 1): {1: 1}}, _E2)},
        (TableRow(0, None, g_e2, _P("[[d1, 0], [0, d2]]"), False, True),), symmetric=False))
    add(ClassifiedAlgebra(
        "L_2^2", {"listed": _const({(1, 1): {1: 1}}, _E2)},
        (TableRow(0, None, g_e2, _P("[[0, 0], [0, d2]]"), True, True),), symmetric=True))
    add(ClassifiedAlgebra(
        "L_3^2",
        {"listed": _const({(1, 2): {1: 1}, (2, 1): {1: -1}}, _NIL),
         "header": _const({(1, 1): {1: 1}}, _E2)},
        (), symmetric=True,
        disputed_rows=(TableRow(0, None, g_e2, _P("[[d1, 0], [0, d2]]"), False, True, disputed=True),)))
    b_any = Param("b")
    b_not1 = Param("b", excluded=(1,))
    add(ClassifiedAlgebra(
        "L_1^3", {"listed": Variant((b_any,), lambda p: {(1, 1): {1: 1}}, lambda p: _diag(0, p["b"]))},
        (TableRow(0, None, g_e2, _P("[[0, 0], [0, d2]]"), True, True),), symmetric=True))
    add(ClassifiedAlgebra(
        "L_2^3", {"listed": Variant((b_not1,), lambda p: {(2, 1): {1: 1}}, lambda p: _diag(0, p["b"]))},
        (TableRow(0, None, g_e2, _P("[[0, 0], [0, d2]]"), False, True),), symmetric=False))
    add(ClassifiedAlgebra(
        "L_3^3",
        {"listed": Variant((b_not1,), lambda p: {(1, 2): {1: 1}, (2, 1): {1: -1}}, lambda p: _diag(0, p["b"]))},
        (TableRow(0, None, g_e2, _P("[[0, 0], [0, d2]]"), False, True),), symmetric=True))
    a_gen = Param("a", excluded=(0, 1))
    add(ClassifiedAlgebra(
        "L_1^4", {"listed": Variant((a_gen,), lambda p: {(2, 1): {1: 1}}, lambda p: _diag(p["a"], 1))},
        (TableRow(0, None, _P("[[c1, 0], [0, c1/a^r]]"), _P("[[0, 0], [0, d2]]"), True, True),),
        symmetric=False))
    add(ClassifiedAlgebra(
        "L_2^4",
        {"listed": Variant((a_gen,), lambda p: {(1, 2): {1: -1}, (2, 1): {1: 1}}, lambda p: _diag(p["a"], 1))},
        (TableRow(0, None, _P("[[c1, 0], [0, c1/a^r]]"), _P("[[d1, 0], [0, 0]]"), True, True),),
        symmetric=False))
    add(ClassifiedAlgebra(
        "L_1^5",
        {"listed": Variant((a_gen,), lambda p: {(2, 2): {1: 1}}, lambda p: _diag(p["a"] ** 2, p["a"])),
         "header": Variant((Param("b", excluded=(0, 1)),), lambda p: {(2, 2): {1: 1}},
                         lambda p: _diag(p["b"] ** 2, p["b"]))},
        (TableRow(0, None, _P("[[c1, 0], [0, c1/b^r]]"), zero_d, True, True),), symmetric=True))
    z_samples = DEFAULT_SAMPLES + (-1,)
    add(ClassifiedAlgebra(
        "L_1^6",
        {"listed": Variant((Param("y1", samples=z_samples), Param("z1")),
                         lambda p: {(1, 2): {1: 1}, (2, 1): {1: p["y1"]}, (2, 2): {1: p["z1"]}},
                         lambda p: _NIL),
         "header": Variant((Param("z1", samples=z_samples), Param("t1")),
                         lambda p: {(1, 2): {1: 1}, (2, 1): {1: p["z1"]}, (2, 2): {1: p["t1"]}},
                         lambda p: _E2),
         "table": Variant((Param("z1", samples=z_samples), Param("t1")),
                          lambda p: {(1, 2): {1: 1}, (2, 1): {1: p["z1"]}, (2, 2): {1: p["t1"]}},
                          lambda p: _NIL)},
        (TableRow(0, 0, _P("[[c1, 0], [0, c1]]"), d_e12, True, True,
                  condition=lambda p: p["z1"] == -1, condition_text="z1 = -1"),
         TableRow(0, 0, _P("[[c1, 0], [0, c1]]"), zero_d, True, True,
                  condition=lambda p: p["z1"] != -1, condition_text="z1 ≠ -1"),
         TableRow(1, 1, g_nil, d_e12),
         TableRow(2, None, g_nil, d_e12)),
        symmetric=True))
    add(ClassifiedAlgebra(
        "L_2^6",
        {"listed": Variant((Param("z1"),), lambda p: {(2, 1): {1: 1}, (2, 2): {1: p["z1"]}}, lambda p: _NIL),
         "header": Variant((Param("t1"),), lambda p: {(2, 1): {1: 1}, (2, 2): {1: p["t1"]}}, lambda p: _NIL)},
        (TableRow(0, 0, g_nil_id, zero_d, False, True), TableRow(1, None, g_nil, d_e12)),
        symmetric=True))
    add(ClassifiedAlgebra(
        "L_3^6", {"listed": _const({(2, 2): {1: 1}}, _NIL)},
        (TableRow(0, 0, g_nil_id, d_e12, True, True), TableRow(1, None, g_nil, d_e12)),
        symmetric=True))
    add(ClassifiedAlgebra(
        "L_1^7", {"listed": _const({(2, 2): {1: 1}}, [[1, 1], [0, 1]])},
        (TableRow(0, 0, g_nil_id, d_e12, True, True), TableRow(1, None, g_nil_id, d_e12)),
        symmetric=True))
    return cat


CATALOG: dict = _build_catalog()
IDS = tuple(CATALOG)


def normalize_id(text: str) -> str:
    """Accept ``L_1^4``, ``L1^4`` or ``L14``."""
    t = text.strip().replace("_", "").replace("^", "")
    if len(t) == 3 and t[0] in "Ll" and t[1:].isdigit():
        return f"L_{t[1]}^{t[2]}"
    return text


def get(id_: str) -> ClassifiedAlgebra:
    key = normalize_id(id_)
    if key not in CATALOG:
        raise UnknownAlgebraError(f"unknown algebra id {id_!r}")
    return CATALOG[key]


def _check_params(entry: ClassifiedAlgebra, variant: Variant, params: Mapping, field: Field) -> dict:
    names = variant.param_names()
    missing = [n for n in names if n not in params]
    if missing:
        raise ConstraintError(f"{entry.id}: missing parameter(s) {', '.join(missing)}")
    extra = [n for n in params if n not in names]
    if extra:
        raise ConstraintError(f"{entry.id}: unknown parameter(s) {', '.join(extra)}")
    out = {}
    for p in variant.params:
        v = field(params[p.name])
        if any(v == field(x) for x in p.excluded):
            raise ConstraintError(f"{entry.id}: {p.name} = {field.format(v)} is excluded")
        out[p.name] = v
    return out


def instantiate(id_: str, variant: str = "listed", params: Mapping | None = None, field: Field = QQ) -> HomAlgebra:
    entry = get(id_)
    v = entry.variant(variant)
    vals = _check_params(entry, v, params or {}, field)
    n = 2
    return HomAlgebra.from_brackets(field, n, v.brackets(vals), v.alpha(vals))


def default_params(id_: str, variant: str = "listed", field: Field = QQ) -> dict | None:
    """First sample point admissible over ``field`` (``None`` if there is none)."""
    entry = get(id_)
    v = entry.variant(variant)
    pools = []
    for p in v.params:
        ok = [s for s in p.samples if not any(field(s) == field(x) for x in p.excluded)]
        if not ok:
            return None
        pools.append(ok[0])
    return dict(zip(v.param_names(), pools))


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpectedTable:
    centroid: PatternMatrix
    derivations: PatternMatrix
    small: bool | None
    cn: bool | None
    row: TableRow


def expected_table(id_: str, r: int, params: Mapping | None = None, include_disputed: bool = False) -> ExpectedTable:
    entry = get(id_)
    rows = entry.rows + (entry.disputed_rows if include_disputed else ())
    params = dict(params or {})
    for row in rows:
        if row.covers(r, params):
            return ExpectedTable(row.centroid, row.derivations, row.small, row.cn, row)
    raise UncoveredRowError(f"no table row of {entry.id} covers r = {r} with {params}")


@dataclass(frozen=True)
class EntryResult:
    name: str
    holds: bool | None  # None = not asserted (blank cell)
    expected: str
    computed: str


@dataclass(frozen=True)
class TableReport:
    id: str
    r: int
    params: dict
    entries: tuple
    skipped: str | None = None

    @property
    def ok(self) -> bool:
        return self.skipped is not None or all(e.holds is not False for e in self.entries)

    def entry(self, name: str) -> EntryResult:
        return next(e for e in self.entries if e.name == name)


def _render_space(mats: list[Matrix], field: Field) -> str:
    if not mats:
        return "0"
    return "<" + ", ".join(
        "[" + ", ".join("[" + ", ".join(field.format(x) for x in row) + "]" for row in m.rows) + "]" for m in mats
    ) + ">"


def verify_table(
    id_: str,
    r: int,
    params: Mapping | None = None,
    field: Field = QQ,
    expected: ExpectedTable | None = None,
    algebra: HomAlgebra | None = None,
) -> TableReport:
    """Compare computed spaces and flags with the stored table row.

    ``expected`` and ``algebra`` can be overridden (e.g. for negative controls).
    """
    entry = get(id_)
    params = dict(params or {})
    if expected is None:
        try:
            expected = expected_table(id_, r, params)
        except UncoveredRowError:
            if entry.disputed_rows:
                return TableReport(entry.id, r, params, (), skipped="SKIPPED-DISPUTED")
            raise
    A = algebra if algebra is not None else instantiate(id_, entry.table_variant, params, field)
    env = {k: field(v) for k, v in params.items()}
    env["r"] = r
    results = []
    for name, pattern, solver in (
        ("centroid", expected.centroid, centroid_space),
        ("derivations", expected.derivations, derivation_space),
    ):
        want = pattern.to_subspace(field, env)
        got = solver(A, r)
        results.append(
            EntryResult(
                name,
                got.space == want,
                _render_space([Matrix.from_vector(field, v, 2) for v in want.basis], field),
                _render_space(got.matrices(), field),
            )
        )
    for name, flag, fn in (
        ("small", expected.small, is_small_centroid),
        ("cn", expected.cn, is_characteristically_nilpotent),
    ):
        value = fn(A)
        results.append(EntryResult(name, None if flag is None else value == flag, str(flag), str(value)))
    return TableReport(entry.id, r, params, tuple(results))


def table_cases(rmax: int = 3, ids=None) -> list[tuple[str, int, dict]]:
    """All (id, r, params) combinations exercised by the table suite."""
    out = []
    for id_ in ids or IDS:
        entry = get(id_)
        for params in entry.sample_params("table"):
            for r in range(rmax + 1):
                out.append((entry.id, r, params))
    return out


def verify_all(rmax: int = 3, ids=None, field: Field = QQ) -> list[TableReport]:
    return [verify_table(i, r, p, field) for i, r, p in table_cases(rmax, ids)]


# ---------------------------------------------------------------------------
# further examples
# ---------------------------------------------------------------------------


def superalgebra_example(a, x, d, mu, field: Field = QQ) -> HomAlgebra:
    """Three-dimensional symmetric Hom-Leibniz superalgebra; e1, e2 even and e3 odd.

    [e1,e1] = a e1 + x e2, [e1,e2] = [e2,e1] = -(a/x)[e1,e1],
    [e2,e2] = (a/x)^2 [e1,e1], [e3,e3] = (d/x)[e1,e1], alpha = diag(-1, 1, mu).
    """
    a, x, d, mu = (field(v) for v in (a, x, d, mu))
    if not x:
        raise ConstraintError("x must be nonzero")
    q = a / x
    base = {1: a, 2: x}
    scaled = lambda c: {k: c * v for k, v in base.items()}  # noqa: E731
    brackets = {
        (1, 1): base,
        (1, 2): scaled(-q),
        (2, 1): scaled(-q),
        (2, 2): scaled(q * q),
        (3, 3): scaled(d / x),
    }
    return HomAlgebra.from_brackets(field, 3, brackets, [[-1, 0, 0], [0, 1, 0], [0, 0, mu]], parity=(0, 0, 1))


SUPERALGEBRA_SAMPLES = ((1, 1, 1, 1), (0, 1, 0, -1), (2, 3, 5, Fraction(1, 2)), (-1, 2, 3, 7))


def tensor_example(alpha_rows=None, field: Field = QQ) -> HomAlgebra:
    """The 9-dimensional bracket on G (x) G with [x1x3, x1x3] = x1x1,
    [x2x3, x1x3] = x2x1, [x2x3, x2x3] = x2x2 and twisting map alpha (x) alpha."""
    from .exactla import kron

    idx = lambda i, j: (i - 1) * 3 + j  # noqa: E731
    brackets = {
        (idx(1, 3), idx(1, 3)): {idx(1, 1): 1},
        (idx(2, 3), idx(1, 3)): {idx(2, 1): 1},
        (idx(2, 3), idx(2, 3)): {idx(2, 2): 1},
    }
    al = Matrix.from_rows(field, alpha_rows or [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    k = kron(al, al)
    names = [f"x{i}⊗x{j}" for i in range(1, 4) for j in range(1, 4)]
    return HomAlgebra.from_brackets(field, 9, brackets, [list(r) for r in k.rows], names=names)


def _algebra(dim, brackets, alpha=None, field: Field = QQ) -> HomAlgebra:
    alpha = alpha or [[int(i == j) for j in range(dim)] for i in range(dim)]
    return HomAlgebra.from_brackets(field, dim, brackets, alpha)


def sample_lie_algebras(field: Field = QQ) -> dict:
    """Small Lie algebras (twisting map = identity)."""
    return {
        "aff2": _algebra(2, {(1, 2): {1: 1}, (2, 1): {1: -1}}, field=field),
        "heisenberg3": _algebra(3, {(1, 2): {3: 1}, (2, 1): {3: -1}}, field=field),
        "sl2": _algebra(
            3, {(1, 2): {2: 2}, (2, 1): {2: -2}, (1, 3): {3: -2}, (3, 1): {3: 2}, (2, 3): {1: 1}, (3, 2): {1: -1}},
            field=field,
        ),
    }


def sample_symmetric_leibniz(field: Field = QQ) -> dict:
    """Symmetric Leibniz algebras (alpha = id) paired with a bracket endomorphism."""
    return {
        "L_2^1": (_algebra(2, {(2, 2): {1: 1}}, field=field), [[4, 0], [0, 2]]),
        "L_4^1": (_algebra(2, {(1, 2): {1: 1}, (2, 1): {1: -1}}, field=field), [[1, 1], [0, 1]]),
        "form3": (_algebra(3, {(2, 2): {1: 1}, (3, 3): {1: 1}}, field=field), [[4, 0, 0], [0, 2, 0], [0, 0, 2]]),
    }
