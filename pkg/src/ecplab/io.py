"""Text formats for fields, elements, vectors, codes and GRS specs.

Code file::

    code n=7 k=3 field=GF(2^3; modulus=1,1,0,1)
    [1,0,0] [0,0,0] ...          # k rows of n element literals

Spec file::

    grs n=5 k=2 field=GF(5^1; modulus=0,1)
    a: [0] [1] [2] [3] inf
    b: [1] [1] [1] [1] [1]

Elements are coefficient lists ``[c0,...,c_{m-1}]``; over a tower each
coefficient is itself a literal of the base field.  Bare integers are
accepted for prime fields.  ``#`` starts a comment.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .code import LinearCode
from .gf import GF, FieldSpec, field_from_modulus, prime_field
from .grs import INF, GrsSpec


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
        if source:
            where = f"{source}: {where}" if where else source
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------

def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_field(text: str) -> FieldSpec:
    """``GF(q)``, ``GF(p^m; modulus=c0,...,cm)`` or a nested tower literal."""
    text = text.strip()
    if not (text.startswith("GF(") and text.endswith(")")):
        raise ValueError(f"not a field literal: {text!r}")
    inner = text[3:-1]
    parts = _split_top(inner, ";")
    if len(parts) == 1:
        try:
            return GF(int(parts[0]))
        except ValueError as exc:
            raise ValueError(f"bad field literal {text!r}: {exc}") from None
    if len(parts) != 2:
        raise ValueError(f"bad field literal {text!r}")
    head, mod = parts[0].strip(), parts[1].strip()
    if not mod.startswith("modulus="):
        raise ValueError(f"expected 'modulus=' in {text!r}")
    base_text, _, m_text = head.rpartition("^")
    if not base_text:
        raise ValueError(f"expected '<base>^<m>' in {text!r}")
    coeff_texts = _split_top(mod[len("modulus="):], ",")
    if base_text.startswith("GF("):
        base = parse_field(base_text)
        modulus = [parse_element(base, c) for c in coeff_texts]
        return field_from_modulus(base.p, modulus, base)
    p, m = int(base_text), int(m_text)
    modulus = [int(c) for c in coeff_texts]
    if len(modulus) != m + 1:
        raise ValueError(f"modulus of degree {len(modulus) - 1} for m={m}")
    if m == 1:
        if tuple(modulus) != (0, 1):
            raise ValueError("the prime field literal must use modulus=0,1")
        return prime_field(p)
    return field_from_modulus(p, modulus)


def _element_from_obj(F: FieldSpec, obj) -> int:
    if isinstance(obj, bool):
        raise ValueError("not an element literal")
    if isinstance(obj, int):
        if F.base is not None:
            raise ValueError(f"bare integer {obj} is ambiguous over {F!r}; use [c0,...]")
        if not 0 <= obj < F.q:
            raise ValueError(f"{obj} is not an element of {F!r}")
        return obj
    if not isinstance(obj, list):
        raise ValueError("not an element literal")
    if F.base is None:
        if len(obj) != 1 or not isinstance(obj[0], int) or isinstance(obj[0], bool):
            raise ValueError(f"prime-field element must be [x], got {obj}")
        return _element_from_obj(F, obj[0])
    if len(obj) != F.m:
        raise ValueError(f"expected {F.m} coefficients, got {len(obj)}")
    if F.base.base is None:
        if not all(isinstance(c, int) and 0 <= c < F.p for c in obj):
            raise ValueError(f"coefficients must lie in 0..{F.p - 1}")
        return F.from_coeffs(obj)
    return F.from_coeffs([_element_from_obj(F.base, c) for c in obj])


def parse_element(F: FieldSpec, text: str) -> int:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        raise ValueError(f"not an element literal: {text!r}") from None
    return _element_from_obj(F, obj)


def format_vector(F: FieldSpec, v) -> str:
    return " ".join(F.format_element(x) for x in np.asarray(v).ravel())


def format_point(F: FieldSpec, z) -> str:
    return "inf" if z is INF else F.format_element(z)


# ---------------------------------------------------------------------------
# line-oriented documents
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def _content_lines(text: str):
    """(line number, content, offset) with comments and blank lines dropped."""
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield i, body


def _tokens(body: str):
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]


def _parse_header(kind: str, lineno: int, body: str, source):
    toks = _tokens(body)
    if not toks or toks[0][0] != kind:
        raise ParseError(f"expected a '{kind}' header", lineno, 1, source)
    values = {}
    # the field literal may contain spaces: take everything after 'field='
    idx = body.find("field=")
    if idx < 0:
        raise ParseError("missing field=", lineno, len(body.rstrip()) + 1, source)
    head, field_text = body[:idx], body[idx + len("field="):]
    for tok, col in _tokens(head)[1:]:
        key, eq, val = tok.partition("=")
        if not eq or key not in ("n", "k"):
            raise ParseError(f"unexpected header item {tok!r}", lineno, col, source)
        try:
            values[key] = int(val)
        except ValueError:
            raise ParseError(f"{key} must be an integer", lineno, col + len(key) + 1, source) from None
    for key in ("n", "k"):
        if key not in values:
            raise ParseError(f"missing {key}=", lineno, 1, source)
    try:
        F = parse_field(field_text)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, idx + len("field=") + 1, source) from None
    return values["n"], values["k"], F


def _parse_elements(F: FieldSpec, toks, lineno, source, allow_inf=False):
    out = []
    for tok, col in toks:
        if allow_inf and tok.lower() == "inf":
            out.append(INF)
            continue
        try:
            out.append(parse_element(F, tok))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col, source) from None
    return out


def parse_code(text: str, source: str | None = None) -> LinearCode:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty code file", source=source)
    lineno, body = lines[0]
    n, k, F = _parse_header("code", lineno, body, source)
    rows = lines[1:]
    if len(rows) != k:
        where = rows[k][0] if len(rows) > k else (rows[-1][0] if rows else lineno)
        raise ParseError(f"expected {k} generator rows, found {len(rows)}", where, 1, source)
    M = np.zeros((k, n), dtype=np.int64)
    for r, (ln, b) in enumerate(rows):
        toks = _tokens(b)
        if len(toks) != n:
            col = toks[n][1] if len(toks) > n else len(b.rstrip()) + 1
            raise ParseError(f"expected {n} entries, found {len(toks)}", ln, col, source)
        M[r] = _parse_elements(F, toks, ln, source)
    C = LinearCode(F, M, n)
    if C.k != k:
        raise ParseError(f"generator rows have rank {C.k}, header says k={k}",
                         rows[0][0] if rows else lineno, 1, source)
    return C


def format_code(C: LinearCode) -> str:
    F = C.field
    lines = [f"code n={C.n} k={C.k} field={F.literal()}"]
    lines += [format_vector(F, row) for row in C.gen]
    return "\n".join(lines) + "\n"


def parse_spec(text: str, source: str | None = None) -> GrsSpec:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty spec file", source=source)
    lineno, body = lines[0]
    n, k, F = _parse_header("grs", lineno, body, source)
    found = {}
    for ln, b in lines[1:]:
        toks = _tokens(b)
        label = toks[0][0]
        if label not in ("a:", "b:") or label in found:
            raise ParseError(f"expected 'a:' or 'b:' line, got {label!r}", ln, toks[0][1], source)
        vals = _parse_elements(F, toks[1:], ln, source, allow_inf=label == "a:")
        if len(vals) != n:
            raise ParseError(f"expected {n} entries, found {len(vals)}", ln, toks[0][1], source)
        found[label] = vals
    for label in ("a:", "b:"):
        if label not in found:
            raise ParseError(f"missing '{label}' line", lines[-1][0], 1, source)
    try:
        return GrsSpec(F, tuple(found["a:"]), tuple(found["b:"]), k)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, 1, source) from None


def format_spec(spec: GrsSpec) -> str:
    F = spec.field
    return "\n".join([
        f"grs n={spec.n} k={spec.k} field={F.literal()}",
        "a: " + " ".join(format_point(F, z) for z in spec.a),
        "b: " + format_vector(F, spec.b),
    ]) + "\n"


def parse_vector(F: FieldSpec, text: str, n: int | None = None, source: str | None = None
                 ) -> np.ndarray:
    toks, lineno = [], 1
    for ln, b in _content_lines(text):
        toks += [(t, c, ln) for t, c in _tokens(b)]
    out = []
    for tok, col, ln in toks:
        out.extend(_parse_elements(F, [(tok, col)], ln, source))
        lineno = ln
    if n is not None and len(out) != n:
        raise ParseError(f"expected {n} entries, found {len(out)}", lineno, None, source)
    return np.array(out, dtype=np.int64)


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_code_or_spec(path: str) -> LinearCode:
    """A code from either a code file or a spec file."""
    text = read_text(path)
    first = next(_content_lines(text), (0, ""))[1].split()
    if first and first[0] == "grs":
        return parse_spec(text, path).code()
    return parse_code(text, path)
