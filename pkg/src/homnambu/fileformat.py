"""Line-oriented text format for algebras and cochains.

Algebra file::

    # comments run to end of line
    algebra sl2_lambda_2
    arity 2
    dim 3
    basis H X Y
    flags skew multiplicative
    alpha H -> H
    alpha X -> 4 X
    alpha Y -> 1/4 Y
    bracket [H, X] = 8 X
    bracket [H, Y] = -1/2 Y
    bracket [X, Y] = H

``alpha`` lines set the twist of every slot; ``alphaK`` (1-based K)
overrides slot K.  Without any alpha line the twist is the identity.
With the ``skew`` flag only strictly increasing tuples may be given.
Labels may also be written as 1-based indices.

Cochain file (labels are resolved against an algebra)::

    cochain e4
    degree 1
    value (e4) = 1
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FormatError, SemanticError
from .exactlin import ONE, ZERO, Matrix
from .homcore import HomAlgebra, check_skew, skew_symmetrize
from .induce import Cochain

_LABEL = r"[A-Za-z_][A-Za-z0-9_']*|\d+"
_LABEL_RE = re.compile(rf"^(?:{_LABEL})$")
_TERM = re.compile(rf"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*({_LABEL})?\s*")
_TUPLE = re.compile(r"^\s*[\[(]([^\])]*)[\])]\s*=\s*(.*)$")
_ALPHA_KEY = re.compile(r"^alpha(\d*)$")


class _Line:
    def __init__(self, number: int, raw: str):
        self.number = number
        self.raw = raw
        self.text = raw.split("#", 1)[0].rstrip()
        stripped = self.text.lstrip()
        self.indent = len(self.text) - len(stripped)
        head, _, rest = stripped.partition(" ")
        self.key = head
        self.rest = rest.strip()
        self.rest_col = self.text.find(rest.strip(), self.indent + len(head)) + 1 if rest.strip() \
            else len(self.text) + 1

    def error(self, message: str, col: int | None = None, semantic: bool = False):
        cls = SemanticError if semantic else FormatError
        return cls(message, self.number, col if col is not None else self.indent + 1)


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        ln = _Line(i, raw)
        if ln.key:
            yield ln


def _parse_int(ln: _Line, what: str) -> int:
    if not re.fullmatch(r"\d+", ln.rest):
        raise ln.error(f"expected a nonnegative integer after '{what}'", ln.rest_col)
    return int(ln.rest)


class _Resolver:
    def __init__(self, labels):
        self.labels = list(labels)
        self.index = {lbl: i for i, lbl in enumerate(self.labels)}

    def __call__(self, ln: _Line, token: str, col: int) -> int:
        if token.isdigit():
            i = int(token) - 1
            if not 0 <= i < len(self.labels):
                raise ln.error(f"index out of range: {token} (dim {len(self.labels)})", col,
                               semantic=True)
            return i
        if token not in self.index:
            raise ln.error(f"unknown basis label {token!r}", col, semantic=True)
        return self.index[token]


def _parse_combination(ln: _Line, text: str, col0: int, resolve: _Resolver, dim: int):
    """``c1 lbl1 + c2 lbl2 ...``; a bare ``0`` is the zero vector."""
    out = [ZERO] * dim
    if text.strip() == "0":
        return tuple(out)
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, coeff, label = m.group(1), m.group(2), m.group(3)
        label_col = m.start(3)
        if label is None and coeff and coeff.isdigit():
            # a lone integer is a 1-based index label: "3" means 1 e3
            coeff, label, label_col = None, coeff, m.start(2)
        if m.end() == pos or label is None:
            raise ln.error("expected a term 'coefficient label'", col0 + pos)
        if sign is None and not first:
            raise ln.error("expected '+' or '-' between terms", col0 + pos)
        if coeff and re.search(r"/0+$", coeff):
            raise ln.error("zero denominator", col0 + m.start(2))
        c = Fraction(coeff) if coeff else ONE
        if sign == "-":
            c = -c
        out[resolve(ln, label, col0 + label_col)] += c
        pos = m.end()
        first = False
    if first:
        raise ln.error("empty linear combination", col0)
    return tuple(out)


def _split_tuple(ln: _Line, inner: str, col0: int) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    for part in inner.split(","):
        tok = part.strip()
        col = col0 + pos + (len(part) - len(part.lstrip()))
        if not _LABEL_RE.match(tok):
            raise ln.error(f"bad label {tok!r} in tuple", col)
        toks.append((tok, col))
        pos += len(part) + 1
    return toks


def parse_algebra_file(text: str) -> HomAlgebra:
    name = None
    arity = dim = None
    labels = None
    flags: set[str] = set()
    alpha_rows: dict[int, dict[int, tuple]] = {}
    brackets: dict[tuple, tuple] = {}
    resolve = None

    def need_header(ln: _Line):
        nonlocal labels, resolve
        if arity is None or dim is None:
            raise ln.error(f"'{ln.key}' before 'arity' and 'dim'", semantic=True)
        if labels is None:
            labels = [f"e{i + 1}" for i in range(dim)]
        if resolve is None:
            resolve = _Resolver(labels)

    for ln in _lines(text):
        key = ln.key
        if key == "algebra":
            if not re.fullmatch(r"\S+", ln.rest):
                raise ln.error("expected a single name after 'algebra'", ln.rest_col)
            name = ln.rest
        elif key == "arity":
            arity = _parse_int(ln, "arity")
            if arity < 2:
                raise ln.error("arity must be at least 2", ln.rest_col, semantic=True)
        elif key == "dim":
            dim = _parse_int(ln, "dim")
            if dim < 1:
                raise ln.error("dim must be positive", ln.rest_col, semantic=True)
        elif key == "basis":
            if dim is None:
                raise ln.error("'basis' before 'dim'", semantic=True)
            labels = ln.rest.split()
            if len(labels) != dim:
                raise ln.error(f"basis has {len(labels)} labels, dim is {dim}", ln.rest_col,
                               semantic=True)
            for lbl in labels:
                if not _LABEL_RE.match(lbl) or lbl.isdigit():
                    raise ln.error(f"bad basis label {lbl!r}", ln.rest_col)
            if len(set(labels)) != len(labels):
                raise ln.error("duplicate basis label", ln.rest_col, semantic=True)
            resolve = None
        elif key == "flags":
            for f in ln.rest.split():
                if f not in ("skew", "multiplicative"):
                    raise ln.error(f"unknown flag {f!r}", ln.rest_col)
                flags.add(f)
        elif _ALPHA_KEY.match(key):
            need_header(ln)
            slot_txt = _ALPHA_KEY.match(key).group(1)
            slot = int(slot_txt) if slot_txt else 0
            if slot_txt and not 1 <= slot <= arity - 1:
                raise ln.error(f"twist slot {slot} out of range 1..{arity - 1}", semantic=True)
            src, arrow, rhs = ln.rest.partition("->")
            if not arrow:
                raise ln.error("expected 'alpha LABEL -> combination'", ln.rest_col)
            src_col = ln.rest_col
            i = resolve(ln, src.strip(), src_col)
            rows = alpha_rows.setdefault(slot, {})
            if i in rows:
                raise ln.error(f"duplicate alpha line for {labels[i]}", src_col, semantic=True)
            rhs_col = ln.rest_col + len(src) + 2
            rows[i] = _parse_combination(ln, rhs, rhs_col, resolve, dim)
        elif key == "bracket":
            need_header(ln)
            m = _TUPLE.match(ln.rest)
            if not m:
                raise ln.error("expected 'bracket [a, b, ...] = combination'", ln.rest_col)
            inner_col = ln.rest_col + ln.rest.index(m.group(1)) if m.group(1) else ln.rest_col
            toks = _split_tuple(ln, m.group(1), inner_col)
            if len(toks) != arity:
                raise ln.error(f"bracket has {len(toks)} arguments, arity is {arity}",
                               ln.rest_col, semantic=True)
            t = tuple(resolve(ln, tok, col) for tok, col in toks)
            if t in brackets:
                raise ln.error(f"duplicate bracket tuple {_fmt_tuple(t, labels)}", ln.rest_col,
                               semantic=True)
            if "skew" in flags and any(b <= a for a, b in zip(t, t[1:])):
                raise ln.error("skew-flagged algebra needs strictly increasing tuples",
                               ln.rest_col, semantic=True)
            rhs_col = ln.rest_col + ln.rest.index(m.group(2)) if m.group(2) else ln.rest_col
            brackets[t] = _parse_combination(ln, m.group(2), rhs_col, resolve, dim)
        else:
            raise ln.error(f"unknown keyword {key!r}")

    last = len(text.splitlines()) or 1
    for what, val in (("algebra", name), ("arity", arity), ("dim", dim)):
        if val is None:
            raise SemanticError(f"missing '{what}' line", last)
    if labels is None:
        labels = [f"e{i + 1}" for i in range(dim)]

    def twist(slot: int) -> Matrix:
        rows = alpha_rows[slot]
        missing = [labels[i] for i in range(dim) if i not in rows]
        if missing:
            key = f"alpha{slot}" if slot else "alpha"
            raise SemanticError(f"missing '{key}' line for {', '.join(missing)}", last)
        return Matrix.from_columns([rows[i] for i in range(dim)])

    base = twist(0) if 0 in alpha_rows else Matrix.identity(dim)
    slots = [twist(s) if s in alpha_rows else base for s in range(1, arity)]
    twists = base if all(s == base for s in slots) else slots
    kw = dict(twists=twists, labels=labels, name=name,
              multiplicative="multiplicative" in flags)
    if "skew" in flags:
        return skew_symmetrize(dim, arity, brackets, **kw)
    return HomAlgebra(dim, arity, brackets, skew=False, **kw)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _fmt_scalar(c: Fraction) -> str:
    return str(c)


def _fmt_combination(v, labels) -> str:
    parts = []
    for c, lbl in zip(v, labels):
        if not c:
            continue
        mag = abs(c)
        body = lbl if mag == 1 else f"{_fmt_scalar(mag)} {lbl}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def _fmt_tuple(t, labels, brackets="[]") -> str:
    return brackets[0] + ", ".join(labels[i] for i in t) + brackets[1]


def serialize_algebra(A: HomAlgebra) -> str:
    """Canonical text: sorted tuples, reduced rationals, only nonzero entries."""
    labels = A.labels
    lines = [f"algebra {A.name}", f"arity {A.arity}", f"dim {A.dim}",
             "basis " + " ".join(labels)]
    flags = [f for f, on in (("skew", A.skew), ("multiplicative", A.multiplicative)) if on]
    if flags:
        lines.append("flags " + " ".join(flags))
    if A.has_single_twist():
        twist_blocks = [("alpha", A.twists[0])]
    else:
        twist_blocks = [(f"alpha{s + 1}", m) for s, m in enumerate(A.twists)]
    for key, m in twist_blocks:
        if key == "alpha" and m == Matrix.identity(A.dim):
            continue
        for i in range(A.dim):
            lines.append(f"{key} {labels[i]} -> {_fmt_combination(m.column(i), labels)}")
    table = A.table
    if A.skew:
        if not check_skew(A).passed:
            raise ValueError("skew flag is set but the table is not skew-symmetric")
        keys = [t for t in table if all(a < b for a, b in zip(t, t[1:]))]
    else:
        keys = list(table)
    for t in sorted(keys):
        lines.append(f"bracket {_fmt_tuple(t, labels)} = {_fmt_combination(table[t], labels)}")
    return "\n".join(lines) + "\n"


def parse_cochain_file(text: str, A: HomAlgebra) -> Cochain:
    resolve = _Resolver(A.labels)
    name = None
    degree = None
    values: dict[tuple, Fraction] = {}
    for ln in _lines(text):
        if ln.key == "cochain":
            if not re.fullmatch(r"\S+", ln.rest):
                raise ln.error("expected a single name after 'cochain'", ln.rest_col)
            name = ln.rest
        elif ln.key == "degree":
            degree = _parse_int(ln, "degree")
        elif ln.key == "value":
            if degree is None:
                raise ln.error("'value' before 'degree'", semantic=True)
            m = _TUPLE.match(ln.rest)
            if not m:
                raise ln.error("expected 'value (a, b, ...) = p/q'", ln.rest_col)
            inner = m.group(1).strip()
            inner_col = ln.rest_col + ln.rest.index(m.group(1)) if m.group(1) else ln.rest_col
            toks = _split_tuple(ln, m.group(1), inner_col) if inner else []
            if len(toks) != degree:
                raise ln.error(f"value tuple has {len(toks)} entries, degree is {degree}",
                               ln.rest_col, semantic=True)
            t = tuple(resolve(ln, tok, col) for tok, col in toks)
            if any(b <= a for a, b in zip(t, t[1:])):
                raise ln.error("cochain tuples must be strictly increasing", ln.rest_col,
                               semantic=True)
            if t in values:
                raise ln.error("duplicate cochain tuple", ln.rest_col, semantic=True)
            num = m.group(2).strip()
            if not re.fullmatch(r"-?\d+(?:/0*[1-9]\d*)?", num):
                raise ln.error(f"bad rational {num!r}", ln.rest_col + ln.rest.index(m.group(2)))
            values[t] = Fraction(num)
        else:
            raise ln.error(f"unknown keyword {ln.key!r}")
    last = len(text.splitlines()) or 1
    if name is None:
        raise SemanticError("missing 'cochain' line", last)
    if degree is None:
        raise SemanticError("missing 'degree' line", last)
    return Cochain(A.dim, degree, values, name=name)


def serialize_cochain(c: Cochain, labels) -> str:
    lines = [f"cochain {c.name}", f"degree {c.degree}"]
    for t, v in sorted(c.values.items()):
        lines.append(f"value {_fmt_tuple(t, labels, '()')} = {_fmt_scalar(v)}")
    return "\n".join(lines) + "\n"
