"""Plain-text group files.

    # comment
    dim 4
    gen
      B diag 1 1 1 -1
      b 0 0 1/2 0
    gen
      B perm (1 2)+ 3- 4+
      b 1/2 0 0 0

Axes are 1-based.  A perm token ``(p q)s`` swaps axes p and q with sign s on
both, ``is`` keeps axis i with sign s; axes left out are fixed.  Translation
entries are integers or fractions with a power-of-two denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .bieberbach import BieberbachGroup, validate
from .errors import GroupFileError
from .signperm import SignedPermutation

_TOKEN = re.compile(r"\s*(?:\((\d+)\s+(\d+)\)([+-])|(\d+)([+-]))")
_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _parse_perm(text: str, n: int, line: int) -> SignedPermutation:
    image = list(range(n))
    sign = [1] * n
    seen = set()
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GroupFileError(f"bad perm token near {text[pos:].strip()!r}", line)
        pos = m.end()
        if m.group(1):
            p, q, s = int(m.group(1)) - 1, int(m.group(2)) - 1, m.group(3)
            axes = [p, q]
        else:
            p, s = int(m.group(4)) - 1, m.group(5)
            q = p
            axes = [p]
        for a in axes:
            if not 0 <= a < n:
                raise GroupFileError(f"axis {a + 1} out of range 1..{n}", line)
            if a in seen:
                raise GroupFileError(f"axis {a + 1} appears twice", line)
            seen.add(a)
        if p == q and len(axes) == 2:
            raise GroupFileError("a 2-cycle needs two distinct axes", line)
        sg = 1 if s == "+" else -1
        image[p], image[q] = q, p
        sign[p] = sign[q] = sg
    return SignedPermutation(tuple(image), tuple(sign))


def _parse_rational(tok: str, line: int) -> Fraction:
    if not _RATIONAL.match(tok):
        raise GroupFileError(f"bad rational {tok!r}", line)
    try:
        x = Fraction(tok)
    except ZeroDivisionError:
        raise GroupFileError(f"zero denominator in {tok!r}", line) from None
    d = x.denominator
    if d & (d - 1):
        raise GroupFileError(f"denominator of {tok!r} is not a power of 2", line)
    return x


def parse_text(text: str) -> tuple[int, list]:
    """Parse without validating; returns (n, [(B, b), ...])."""
    n = None
    gens: list[list] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "dim":
            if n is not None:
                raise GroupFileError("duplicate dim line", lineno)
            if not rest.isdigit() or int(rest) < 1:
                raise GroupFileError(f"bad dimension {rest!r}", lineno)
            n = int(rest)
            continue
        if n is None:
            raise GroupFileError("expected 'dim <n>' first", lineno)
        if head == "gen":
            if rest:
                raise GroupFileError("'gen' takes no arguments", lineno)
            if gens and None in gens[-1]:
                raise GroupFileError("previous gen block is incomplete", lineno)
            gens.append([None, None])
        elif head in ("B", "b"):
            if not gens:
                raise GroupFileError(f"'{head}' line outside a gen block", lineno)
            slot = 0 if head == "B" else 1
            if gens[-1][slot] is not None:
                raise GroupFileError(f"duplicate '{head}' line", lineno)
            if head == "B":
                kind, _, body = rest.partition(" ")
                if kind == "diag":
                    toks = body.split()
                    if len(toks) != n or any(t not in ("1", "-1", "+1") for t in toks):
                        raise GroupFileError(f"'B diag' needs {n} entries from {{1, -1}}", lineno)
                    gens[-1][0] = SignedPermutation.diag(tuple(int(t) for t in toks))
                elif kind == "perm":
                    gens[-1][0] = _parse_perm(body, n, lineno)
                else:
                    raise GroupFileError("B line must be 'B diag ...' or 'B perm ...'", lineno)
            else:
                toks = rest.split()
                if len(toks) != n:
                    raise GroupFileError(f"'b' needs {n} entries, got {len(toks)}", lineno)
                gens[-1][1] = tuple(_parse_rational(t, lineno) for t in toks)
        else:
            raise GroupFileError(f"unknown keyword {head!r}", lineno)
    if n is None:
        raise GroupFileError("missing 'dim' line")
    for idx, (B, b) in enumerate(gens, 1):
        if B is None or b is None:
            raise GroupFileError(f"gen block {idx} needs both a B and a b line")
    return n, [tuple(g) for g in gens]


def parse_group(text: str, name: str | None = None) -> BieberbachGroup:
    n, gens = parse_text(text)
    return validate(n, gens, name=name)


def read_group(path, name: str | None = None) -> BieberbachGroup:
    with open(path, encoding="utf-8") as fh:
        return parse_group(fh.read(), name=name)


def format_group(group: BieberbachGroup) -> str:
    lines = []
    if group.name:
        lines.append(f"# {group.name}")
    lines.append(f"dim {group.n}")
    for g in group.generators:
        lines.append("gen")
        if g.B.is_diagonal():
            lines.append("  B diag " + " ".join(str(s) for s in g.B.sign))
        else:
            lines.append("  B perm " + " ".join(g.B.tokens()))
        lines.append("  b " + " ".join(str(x) for x in g.b))
    return "\n".join(lines) + "\n"
