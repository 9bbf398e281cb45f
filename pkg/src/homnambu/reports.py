"""Text rendering of check reports: an indented human summary followed by
a ``key: value`` block that is stable across runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .homcore import CheckReport, Counterexample


def fmt_vector(v, labels: Sequence[str] | None = None) -> str:
    """``2 X - 1/2 Y``; formal vectors ``((label, coeff), ...)`` are accepted too."""
    if v and isinstance(v[0], tuple):
        pairs = [(c, lbl) for lbl, c in v]
    else:
        labels = labels or [f"e{i + 1}" for i in range(len(v))]
        pairs = [(c, lbl) for c, lbl in zip(v, labels) if c]
    out = []
    for c, lbl in pairs:
        mag = abs(Fraction(c))
        body = lbl if mag == 1 else f"{mag} {lbl}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out) if out else "0"


def fmt_indices(idx, labels: Sequence[str] | None = None) -> str:
    parts = []
    for i in idx:
        if isinstance(i, int) and labels is not None and 0 <= i < len(labels):
            parts.append(labels[i])
        else:
            parts.append(str(i))
    return "(" + ", ".join(parts) + ")"


def _verdict(r: CheckReport) -> str:
    if r.passed:
        return "PASS"
    return "INFO" if r.informational else "FAIL"


def _cex_line(cex: Counterexample, labels) -> str:
    text = (f"counterexample {fmt_indices(cex.indices, labels)}: "
            f"lhs = {fmt_vector(cex.lhs, labels)}, rhs = {fmt_vector(cex.rhs, labels)}")
    if cex.detail:
        text += f" [{cex.detail}]"
    return text


def human_lines(r: CheckReport, labels=None, depth: int = 0) -> list[str]:
    pad = "  " * depth
    status = "" if r.status in ("pass", "fail") else f" {r.status}"
    lines = [f"{pad}{_verdict(r)}{status} {r.identity_name} ({r.instances} instances)"]
    for note in r.notes:
        lines.append(f"{pad}  note: {note}")
    if r.counterexample is not None:
        lines.append(f"{pad}  {_cex_line(r.counterexample, labels)}")
    for sub in r.details:
        lines.extend(human_lines(sub, labels, depth + 1))
    return lines


def structured_lines(r: CheckReport, labels=None, prefix: str = "",
                     name: str | None = None) -> list[str]:
    key = prefix + (name or r.identity_name)
    lines = [f"{key}.passed: {'true' if r.passed else 'false'}",
             f"{key}.status: {r.status}",
             f"{key}.instances: {r.instances}"]
    if r.informational:
        lines.append(f"{key}.informational: true")
    cex = r.counterexample
    if cex is not None:
        lines.append(f"{key}.counterexample.indices: {fmt_indices(cex.indices, labels)}")
        lines.append(f"{key}.counterexample.lhs: {fmt_vector(cex.lhs, labels)}")
        lines.append(f"{key}.counterexample.rhs: {fmt_vector(cex.rhs, labels)}")
        if cex.detail:
            lines.append(f"{key}.counterexample.detail: {cex.detail}")
    names = [sub.identity_name for sub in r.details]
    seen: dict[str, int] = {}
    for sub in r.details:
        nm = sub.identity_name
        if names.count(nm) > 1:
            seen[nm] = seen.get(nm, 0) + 1
            nm = f"{nm}[{seen[nm]}]"
        lines.extend(structured_lines(sub, labels, key + ".", nm))
    return lines


def format_report(r: CheckReport, labels=None) -> str:
    """Human summary, then a ``--- report`` block of ``key: value`` lines."""
    body = human_lines(r, labels)
    body.append("--- report")
    body.extend(structured_lines(r, labels))
    body.append("---")
    return "\n".join(body) + "\n"
