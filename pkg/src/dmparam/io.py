"""Parameter-file and matrix serialization.

Parameter files are JSON with a ``schema_version`` tag::

    {"schema_version": "1", "kind": "single",
     "payload": {"lambdas": [0.6, 0.4], "zvecs": [[[0.3, 0.1]]]}}

    {"schema_version": "1", "kind": "block",
     "payload": {"n": 2, "m": 2, "lambdas": [...],
                 "local_unitaries": [M, M], "blockvecs": [[M]]}}

    {"schema_version": "1", "kind": "family",
     "payload": {"family": "isotropic", "p": 0.2}}

Complex numbers are ``[re, im]`` pairs; matrices are row-major nested
arrays of such pairs (plain reals are accepted where the imaginary part is
zero).  Angles are radians.

Matrices are written either as JSON (with dims) or as ``matrix_text``:
whitespace-separated ``re+imj`` tokens, one row per line, with 17
significant digits so that values round-trip exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .blocks import BlockParams
from .families import FamilySpec
from .single import SingleParams

__all__ = [
    "SCHEMA_VERSION",
    "ParamFileError",
    "load_param_file",
    "read_matrix",
    "write_matrix",
    "fmt_float",
]

SCHEMA_VERSION = "1"


class ParamFileError(ValueError):
    """Malformed parameter or matrix file; the message names the field."""


def fmt_float(x: float) -> str:
    """17 significant digits: lossless for IEEE doubles."""
    return f"{float(x):.17g}"


def _to_complex(obj, field):
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2 and all(
        isinstance(v, (int, float)) for v in obj
    ):
        return complex(obj[0], obj[1])
    raise ParamFileError(f"field {field!r}: expected a number or [re, im] pair")


def _to_vector(obj, field):
    if not isinstance(obj, list):
        raise ParamFileError(f"field {field!r}: expected a list")
    return np.array([_to_complex(v, field) for v in obj], dtype=complex)


def _to_matrix(obj, field):
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParamFileError(f"field {field!r}: expected a nested array (matrix)")
    rows = [[_to_complex(v, field) for v in row] for row in obj]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParamFileError(f"field {field!r}: ragged matrix rows")
    return np.array(rows, dtype=complex)


def _complex_pair(z):
    return [z.real, z.imag]


def matrix_to_nested(mat) -> list:
    """Row-major nested ``[re, im]`` pairs."""
    mat = np.asarray(mat, dtype=complex)
    return [[_complex_pair(z) for z in row] for row in mat]


def _get(payload, key, kind):
    if key not in payload:
        raise ParamFileError(f"kind {kind!r}: missing field {key!r}")
    return payload[key]


def load_param_file(path):
    """Parse a parameter file.

    Returns
    -------
    SingleParams | BlockParams | FamilySpec
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParamFileError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParamFileError("top level: expected an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParamFileError(
            f"field 'schema_version': expected {SCHEMA_VERSION!r}, got {version!r}"
        )
    kind = doc.get("kind")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise ParamFileError("field 'payload': expected an object")

    if kind == "single":
        lambdas = np.real_if_close(_to_vector(_get(payload, "lambdas", kind), "lambdas"))
        zvecs = _get(payload, "zvecs", kind)
        if not isinstance(zvecs, list):
            raise ParamFileError("field 'zvecs': expected a list of vectors")
        zvecs = [_to_vector(z, f"zvecs[{i}]") for i, z in enumerate(zvecs)]
        return SingleParams(n=len(lambdas), lambdas=lambdas.real, zvecs=tuple(zvecs))

    if kind == "block":
        n = _get(payload, "n", kind)
        m = _get(payload, "m", kind)
        if not isinstance(n, int) or not isinstance(m, int):
            raise ParamFileError("fields 'n'/'m': expected integers")
        lambdas = _to_vector(_get(payload, "lambdas", kind), "lambdas").real
        unitaries = [
            _to_matrix(U, f"local_unitaries[{k}]")
            for k, U in enumerate(_get(payload, "local_unitaries", kind))
        ]
        blockvecs = []
        for j, Zs in enumerate(_get(payload, "blockvecs", kind), start=2):
            if not isinstance(Zs, list):
                raise ParamFileError(f"field 'blockvecs[{j - 2}]': expected a list")
            blockvecs.append(
                tuple(_to_matrix(Z, f"blockvecs[{j - 2}][{k}]") for k, Z in enumerate(Zs))
            )
        return BlockParams(
            n=n, m=m, lambdas=lambdas,
            local_unitaries=tuple(unitaries), blockvecs=tuple(blockvecs),
        )

    if kind == "family":
        name = _get(payload, "family", kind)
        params = {}
        for key, value in payload.items():
            if key == "family":
                continue
            if key in ("n", "m"):
                params[key] = int(value)
            elif key == "p":
                if isinstance(value, list):
                    params[key] = [float(v) for v in value]
                else:
                    params[key] = float(value)
            elif key in ("alpha", "beta"):
                params[key] = float(value)
            elif key == "Z":
                params[key] = [_to_matrix(Z, f"Z[{k}]") for k, Z in enumerate(value)]
            else:
                params[key] = _to_matrix(value, key)
        try:
            return FamilySpec(kind=name, params=params)
        except ValueError as exc:
            raise ParamFileError(str(exc)) from exc

    raise ParamFileError(f"field 'kind': expected single|block|family, got {kind!r}")


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def write_matrix(path, mat, fmt: str = "json", n=None, m=None):
    """Write a matrix as JSON (with optional dims) or as ``matrix_text``."""
    mat = np.asarray(mat, dtype=complex)
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "matrix": matrix_to_nested(mat)}
        if n is not None:
            doc["n"] = int(n)
        if m is not None:
            doc["m"] = int(m)
        text = json.dumps(doc, indent=1)
    elif fmt == "matrix_text":
        text = "\n".join(" ".join(_fmt_complex(z) for z in row) for row in mat)
    else:
        raise ParamFileError(f"unknown output format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def read_matrix(path):
    """Read a matrix written by :func:`write_matrix` (format sniffed).

    Returns
    -------
    (mat, n, m) : tuple
        ``n``/``m`` are ``None`` when the file does not carry them.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParamFileError(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParamFileError(f"cannot parse {path}: {exc}") from exc
        mat = _to_matrix(doc.get("matrix"), "matrix")
        return mat, doc.get("n"), doc.get("m")
    rows = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([complex(tok) for tok in line.split()])
        except ValueError as exc:
            raise ParamFileError(f"bad matrix_text token in {path}: {exc}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ParamFileError(f"{path}: empty or ragged matrix_text")
    return np.array(rows, dtype=complex), None, None
