"""Matrix text format.

::

    # optional comment lines (``# key: value`` pairs are kept as metadata)
    field 7                      | field 2 3 1 1 0 1 | field Q
    rows cols
    e11 e12 ...
    ...

Extension field headers are ``field p k c0 c1 ... ck`` (modulus coefficients,
lowest degree first). Rational entries are ``a/b`` or ``a``; extension entries
are comma-joined coefficient vectors ``c0,c1,...``.
"""

from __future__ import annotations

from pathlib import Path

from .errors import CompositeModulus, MatrixFormatError, ReduciblePolynomial
from .matrix import Matrix
from .scalar import ExtensionField, Field, PrimeField, QQ


def parse_field_header(line: str) -> Field:
    tok = line.split()
    if not tok or tok[0] != "field" or len(tok) < 2:
        raise MatrixFormatError(f"bad field header {line!r}")
    if tok[1] in ("Q", "q"):
        return QQ
    try:
        p = int(tok[1])
        if len(tok) == 2:
            return PrimeField(p)
        k = int(tok[2])
        coeffs = [int(t) for t in tok[3:]]
    except ValueError as exc:
        raise MatrixFormatError(f"bad field header {line!r}") from exc
    if len(coeffs) != k + 1:
        raise MatrixFormatError(f"extension header needs {k + 1} modulus coefficients, got {len(coeffs)}")
    return ExtensionField(p, coeffs)


def loads_matrix(text: str) -> tuple[Matrix, dict]:
    """Parse matrix text; returns the matrix and the ``# key: value`` metadata."""
    meta = {}
    lines = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            body = s[1:].strip()
            if ":" in body:
                key, val = body.split(":", 1)
                meta[key.strip()] = val.strip()
            continue
        lines.append(s)
    if len(lines) < 2:
        raise MatrixFormatError("missing field header or shape line")
    try:
        field = parse_field_header(lines[0])
    except (CompositeModulus, ReduciblePolynomial) as exc:
        raise MatrixFormatError(str(exc)) from exc
    try:
        nrows, ncols = (int(t) for t in lines[1].split())
    except ValueError as exc:
        raise MatrixFormatError(f"bad shape line {lines[1]!r}") from exc
    body = lines[2:]
    if len(body) != nrows:
        raise MatrixFormatError(f"expected {nrows} rows, found {len(body)}")
    rows = []
    for r in body:
        toks = r.split()
        if len(toks) != ncols:
            raise MatrixFormatError(f"expected {ncols} entries in row {r!r}")
        try:
            rows.append([field.parse(t) for t in toks])
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixFormatError(f"bad entry in row {r!r}: {exc}") from exc
    return Matrix(field, rows, convert=False), meta


def dumps_matrix(M: Matrix, meta: dict | None = None) -> str:
    out = [f"# {k}: {v}" for k, v in (meta or {}).items()]
    out.append(M.field.header())
    out.append(f"{M.nrows} {M.ncols}")
    for r in M.rows:
        out.append(" ".join(M.field.format(x) for x in r))
    return "\n".join(out) + "\n"


def read_matrix(path) -> Matrix:
    return loads_matrix(Path(path).read_text())[0]


def read_matrix_with_meta(path) -> tuple[Matrix, dict]:
    return loads_matrix(Path(path).read_text())


def write_matrix(path, M: Matrix, meta: dict | None = None) -> None:
    Path(path).write_text(dumps_matrix(M, meta))
