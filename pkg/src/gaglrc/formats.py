"""Text formats: matrix files, code descriptors and structured reports.

Matrix file::

    q n k
    <k lines of n space-separated element renderings>

Code descriptor (JSON)::

    {
      "format": "gaglrc-code", "version": 1,
      "field": {"p": 3, "m": 1},
      "places": ["2,2,1", "1,0,1", "2,1,1"],
      "divisor_degree": 4,
      "inner": {"kind": "rs", "points": ["0", "1", "2"], "k": 2}
    }

``places`` entries are polynomials in compact form (or ``"x^2+2*x+2"`` over
prime fields). ``inner`` is either one spec applied to every place or a list
with one spec per place; kinds are ``rs`` (``points``, ``k``), ``parity``
(``r``) and ``matrix`` (``rows``).
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .field import FieldError, FieldSpec, field_create, parse_element, render_element
from .function_field import Place, parse_polynomial, render_polynomial_compact
from .linear import LinearCode, parity_check_code, rs_code
from .lrc import GagLrcCode, build_gag_lrc

DESCRIPTOR_FORMAT = "gaglrc-code"
REPORT_FORMAT = "gaglrc-report"


class DescriptorError(ValueError):
    """Malformed descriptor or matrix file."""


# -- matrices ----------------------------------------------------------------------


def render_matrix(field: FieldSpec, M) -> str:
    M = np.asarray(M)
    k, n = M.shape
    lines = [f"{field.q} {n} {k}"]
    lines += [" ".join(render_element(field, v) for v in row) for row in M]
    return "\n".join(lines) + "\n"


def render_residue_matrix(field: FieldSpec, g0) -> str:
    """Matrix of residues, each entry its coefficient vector ``c0,c1,...``."""
    lines = [f"{field.q} {len(g0[0])} {len(g0)}"]
    for row in g0:
        lines.append(" ".join(",".join(render_element(field, c) for c in res) for res in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, field: FieldSpec | None = None) -> tuple[FieldSpec, np.ndarray]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DescriptorError("empty matrix file")
    try:
        q, n, k = (int(t) for t in lines[0].split())
    except ValueError:
        raise DescriptorError(f"bad matrix header {lines[0]!r}") from None
    if field is None:
        from .field import gf

        field = gf(q)
    if field.q != q:
        raise DescriptorError(f"matrix is over GF({q}), expected {field!r}")
    if len(lines) != k + 1:
        raise DescriptorError(f"expected {k} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != n:
            raise DescriptorError(f"expected {n} entries in row {ln!r}")
        rows.append([parse_element(field, t) for t in toks])
    return field, np.array(rows, dtype=np.int64)


# -- descriptors ---------------------------------------------------------------------


def _element(field: FieldSpec, v) -> int:
    if isinstance(v, int):
        if not 0 <= v < field.q or field.m > 1:
            raise DescriptorError(f"element {v!r} must be a rendering like '0,1' in {field!r}")
        return v
    return parse_element(field, str(v))


def _inner_code(field: FieldSpec, spec: dict) -> LinearCode:
    kind = spec.get("kind")
    if kind == "rs":
        pts = spec.get("points")
        if pts is None:
            pts = field.elements()[: int(spec["n"])]
        else:
            pts = [_element(field, v) for v in pts]
        return rs_code(field, pts, int(spec["k"]))
    if kind == "parity":
        return parity_check_code(field, int(spec["r"]))
    if kind == "matrix":
        rows = [[_element(field, v) for v in row] for row in spec["rows"]]
        return LinearCode(field, np.array(rows, dtype=np.int64))
    raise DescriptorError(f"unknown inner code kind {kind!r}")


def code_from_descriptor(desc: dict[str, Any]) -> GagLrcCode:
    if desc.get("format", DESCRIPTOR_FORMAT) != DESCRIPTOR_FORMAT:
        raise DescriptorError(f"not a code descriptor: format={desc.get('format')!r}")
    try:
        fspec = desc["field"]
        field = field_create(int(fspec["p"]), int(fspec.get("m", 1)))
        places = [Place.finite(parse_polynomial(field, str(t))) for t in desc["places"]]
        m = int(desc["divisor_degree"])
        inner_spec = desc["inner"]
    except KeyError as e:
        raise DescriptorError(f"descriptor is missing {e}") from None
    if isinstance(inner_spec, dict):
        inner_spec = [inner_spec] * len(places)
    if len(inner_spec) != len(places):
        raise DescriptorError(f"{len(places)} places but {len(inner_spec)} inner specs")
    inner = [_inner_code(field, s) for s in inner_spec]
    return build_gag_lrc(field, places, m, inner)


def load_descriptor(path: str | Path) -> GagLrcCode:
    try:
        desc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise DescriptorError(f"{path}: invalid JSON ({e.msg})") from None
    if not isinstance(desc, dict):
        raise DescriptorError(f"{path}: descriptor must be a JSON object")
    return code_from_descriptor(desc)


def descriptor_for(code: GagLrcCode, inner_spec: dict | list | None = None) -> dict:
    """Descriptor reproducing ``code``; inner codes default to explicit matrices."""
    F = code.field
    if inner_spec is None:
        inner_spec = [
            {"kind": "matrix", "rows": [[render_element(F, v) for v in row] for row in C.gen]}
            for C in code.inner
        ]
    return {
        "format": DESCRIPTOR_FORMAT,
        "version": 1,
        "field": {"p": F.p, "m": F.m},
        "places": [render_polynomial_compact(P.poly) for P in code.places],
        "divisor_degree": code.divisor_degree,
        "inner": inner_spec,
    }


def dump_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


def report(kind: str, **fields) -> str:
    """One structured output record."""
    return dump_json({"format": REPORT_FORMAT, "version": 1, "kind": kind, **fields})


# -- shipped data ----------------------------------------------------------------------


def data_path(name: str) -> Path:
    return Path(str(resources.files("gaglrc") / "data" / name))


def example_code() -> GagLrcCode:
    """The [9, 5, 3] code over GF(3) with places ordered x^2+2x+2, x^2+1, x^2+x+2."""
    return load_descriptor(data_path("f3_example.json"))


GOLDEN = ("G0", "G1", "G_RS", "G")


def emit_golden(which: str, code: GagLrcCode | None = None) -> str:
    if which not in GOLDEN:
        raise DescriptorError(f"unknown golden matrix {which!r}; choose from {GOLDEN}")
    code = code or example_code()
    if which == "G0":
        return render_residue_matrix(code.field, code.g0)
    if which == "G1":
        return render_matrix(code.field, code.g1)
    if which == "G_RS":
        return render_matrix(code.field, code.inner[0].gen)
    return render_matrix(code.field, code.base.gen)


def golden_text(which: str) -> str:
    return data_path(f"{which}.txt").read_text()


def parse_word(field: FieldSpec, text: str) -> list[int | None]:
    """Comma-separated symbols (``;`` over extension fields); ``?`` or ``_`` marks an erasure."""
    sep = "," if field.m == 1 else ";"
    out: list[int | None] = []
    for tok in text.split(sep):
        tok = tok.strip()
        if tok in ("?", "_", ""):
            out.append(None)
        else:
            try:
                out.append(parse_element(field, tok))
            except FieldError as e:
                raise DescriptorError(str(e)) from None
    return out


def render_word(field: FieldSpec, word) -> str:
    sep = "," if field.m == 1 else ";"
    return sep.join("?" if v is None else render_element(field, v) for v in word)
