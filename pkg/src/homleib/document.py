"""JSON algebra documents.

Layout (``schema`` 1)::

    {
      "schema": 1,
      "field": "Q"            or {"Fp": 5},
      "dim": 2,
      "basis": ["e1", "e2"],
      "brackets": [{"left": "e2", "right": "e1", "value": {"e1": "1"}}],
      "alpha": [["1", "0"], ["0", "1"]],      # rows; column j is alpha(e_j)
      "parity": [0, 1],                       # optional
      "params": {"a": "2"}                    # optional
    }

Scalars are strings (``"3/4"``, ``"-2"``); unlisted brackets are zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .exactla import GF, QQ, Field, Matrix
from .homalg import HomAlgebra

SCHEMA = 1


class DocumentError(ValueError):
    """A document is malformed; ``location`` points at the offending part."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True)
class AlgebraDocument:
    algebra: HomAlgebra
    params: dict = dc_field(default_factory=dict)  # name -> scalar string


def _field(raw, loc: str) -> Field:
    if raw == "Q":
        return QQ
    if isinstance(raw, dict) and set(raw) == {"Fp"} and isinstance(raw["Fp"], int):
        try:
            return GF(raw["Fp"])
        except ValueError as exc:
            raise DocumentError(loc, str(exc)) from None
    raise DocumentError(loc, 'expected "Q" or {"Fp": p}')


def _scalar(F: Field, raw, loc: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise DocumentError(loc, f"scalar must be a string such as \"3/4\", got {raw!r}")
    try:
        return F.parse(str(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(loc, f"bad scalar {raw!r}: {exc}") from None


def from_json(data) -> AlgebraDocument:
    if not isinstance(data, dict):
        raise DocumentError("$", "document must be a JSON object")
    known = {"schema", "field", "dim", "basis", "brackets", "alpha", "parity", "params"}
    extra = set(data) - known
    if extra:
        raise DocumentError("$", f"unknown key(s) {sorted(extra)}")
    for key in ("field", "dim", "alpha"):
        if key not in data:
            raise DocumentError("$", f"missing key {key!r}")
    if data.get("schema", SCHEMA) != SCHEMA:
        raise DocumentError("$.schema", f"unsupported schema {data.get('schema')!r}")
    F = _field(data["field"], "$.field")
    n = data["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError("$.dim", "dim must be a positive integer")
    names = data.get("basis", [f"e{i + 1}" for i in range(n)])
    if not isinstance(names, list) or len(names) != n or not all(isinstance(x, str) for x in names):
        raise DocumentError("$.basis", f"expected {n} basis names")
    if len(set(names)) != n:
        raise DocumentError("$.basis", "basis names must be distinct")
    index = {name: i for i, name in enumerate(names)}

    sc = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
    seen = set()
    brackets = data.get("brackets", [])
    if not isinstance(brackets, list):
        raise DocumentError("$.brackets", "expected a list")
    for t, entry in enumerate(brackets):
        loc = f"$.brackets[{t}]"
        if not isinstance(entry, dict) or set(entry) != {"left", "right", "value"}:
            raise DocumentError(loc, 'expected {"left", "right", "value"}')
        try:
            i, j = index[entry["left"]], index[entry["right"]]
        except (KeyError, TypeError):
            raise DocumentError(loc, "left/right must be basis names") from None
        if (i, j) in seen:
            raise DocumentError(loc, f"duplicate bracket [{names[i]}, {names[j]}]")
        seen.add((i, j))
        value = entry["value"]
        if not isinstance(value, dict):
            raise DocumentError(loc + ".value", "expected {name: scalar}")
        for name, coeff in value.items():
            if name not in index:
                raise DocumentError(f"{loc}.value.{name}", "not a basis name")
            sc[i][j][index[name]] = _scalar(F, coeff, f"{loc}.value.{name}")

    alpha = data["alpha"]
    if not isinstance(alpha, list) or len(alpha) != n or not all(isinstance(r, list) and len(r) == n for r in alpha):
        raise DocumentError("$.alpha", f"expected an {n} x {n} matrix")
    rows = [[_scalar(F, x, f"$.alpha[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(alpha)]

    parity = data.get("parity")
    if parity is not None:
        if not isinstance(parity, list) or len(parity) != n or any(x not in (0, 1) or isinstance(x, bool) for x in parity):
            raise DocumentError("$.parity", "expected a list of 0/1 of length dim")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise DocumentError("$.params", "expected an object")
    params = {k: F.format(_scalar(F, v, f"$.params.{k}")) for k, v in params.items()}
    try:
        A = HomAlgebra(
            F,
            tuple(tuple(tuple(v) for v in row) for row in sc),
            Matrix.from_rows(F, rows, n),
            None if parity is None else tuple(parity),
            tuple(names),
        )
    except ValueError as exc:
        raise DocumentError("$", str(exc)) from None
    return AlgebraDocument(A, params)


def loads(text: str) -> AlgebraDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return from_json(data)


def to_json(doc: AlgebraDocument | HomAlgebra, params: dict | None = None) -> dict:
    if isinstance(doc, HomAlgebra):
        doc = AlgebraDocument(doc, dict(params or {}))
    A = doc.algebra
    F = A.field
    fmt = F.format
    brackets = []
    for i in range(A.dim):
        for j in range(A.dim):
            v = A.sc[i][j]
            if any(v):
                brackets.append(
                    {
                        "left": A.names[i],
                        "right": A.names[j],
                        "value": {A.names[k]: fmt(x) for k, x in enumerate(v) if x},
                    }
                )
    out = {
        "schema": SCHEMA,
        "field": "Q" if F == QQ else {"Fp": F.p},
        "dim": A.dim,
        "basis": list(A.names),
        "brackets": brackets,
        "alpha": [[fmt(x) for x in row] for row in A.alpha.rows],
    }
    if A.parity is not None:
        out["parity"] = list(A.parity)
    if doc.params:
        out["params"] = {k: str(v) for k, v in doc.params.items()}
    return out


def dumps(doc: AlgebraDocument | HomAlgebra, params: dict | None = None) -> str:
    return json.dumps(to_json(doc, params), sort_keys=True, indent=2, ensure_ascii=False)
