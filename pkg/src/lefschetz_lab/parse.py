"""Text input: polynomials and ``.ideal`` files.

Grammar (whitespace-insensitive)::

    poly   := [sign] term (sign term)*
    term   := factor ([*] factor)*
    factor := INT [/ INT] | VAR [^ INT]

Variables are ``x0..xN``; when there are at most four of them the aliases
``x, y, z, w`` name ``x0..x3``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .ideal import GradedIdeal
from .poly import Polynomial, default_names

ALIASES = ("x", "y", "z", "w")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_INDEXED = re.compile(r"x(\d+)$")


def _lookup_table(variables: Sequence[str]) -> dict:
    table = {name: i for i, name in enumerate(variables)}
    if len(variables) <= len(ALIASES) and list(variables) == default_names(len(variables)):
        for i in range(len(variables)):
            table.setdefault(ALIASES[i], i)
    return table


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:          # only trailing whitespace left
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        else:
            toks.append(("sym", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def _infer_nvars(toks: list) -> int:
    top = -1
    for kind, val, _ in toks:
        if kind != "name":
            continue
        if val in ALIASES:
            top = max(top, ALIASES.index(val))
        else:
            m = _INDEXED.match(val)
            if m:
                top = max(top, int(m.group(1)))
    return top + 1


class _Parser:
    def __init__(self, text: str, toks: list, table: dict, nvars: int):
        self.text = text
        self.toks = toks
        self.i = 0
        self.table = table
        self.nvars = nvars

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, pos: int):
        raise ParseError(msg, self.text, pos)

    def poly(self) -> dict:
        terms: dict = {}
        sign = 1
        kind, val, pos = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            c, m = self.term()
            c *= sign
            terms[m] = terms.get(m, 0) + c
            kind, val, pos = self.peek()
            if kind == "end":
                return terms
            if kind == "sym" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            self.fail(f"unexpected {val!r}", pos)

    def term(self) -> tuple:
        exps = [0] * self.nvars
        coeff_box = [Fraction(1)]
        self.factor(exps, coeff_box)
        while True:
            kind, val, pos = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                self.factor(exps, coeff_box)
            elif kind in ("int", "name"):
                self.factor(exps, coeff_box)
            else:
                return coeff_box[0], tuple(exps)

    def _int(self) -> int:
        kind, val, pos = self.take()
        if kind == "sym" and val == "-":
            self.fail("negative exponent", pos)
        if kind != "int":
            self.fail("expected an integer" if kind != "end" else "unexpected end of input", pos)
        return int(val)

    def factor(self, exps: list, coeff_box: list):
        kind, val, pos = self.take()
        if kind == "int":
            c = Fraction(int(val))
            k2, v2, _ = self.peek()
            if k2 == "sym" and v2 == "/":
                self.take()
                _, _, dpos = self.peek()
                den = self._int()
                if den == 0:
                    self.fail("zero denominator", dpos)
                c /= den
            coeff_box[0] *= c
            return
        if kind == "name":
            idx = self.table.get(val)
            if idx is None:
                self.fail(f"unknown variable {val!r}", pos)
            e = 1
            k2, v2, _ = self.peek()
            if k2 == "sym" and v2 == "^":
                self.take()
                e = self._int()
            exps[idx] += e
            return
        if kind == "end":
            self.fail("unexpected end of input", pos)
        self.fail(f"unexpected {val!r}", pos)


def parse_polynomial(text: str, variables: Sequence[str] | None = None,
                     nvars: int | None = None) -> Polynomial:
    """Parse ``text`` into a :class:`Polynomial`.

    ``variables`` fixes the names (and their count).  Without it the
    count is the largest index used, or ``nvars`` if that is larger.
    """
    toks = _tokenize(text)
    if variables is None:
        n = max(_infer_nvars(toks), nvars or 0)
        if n > len(ALIASES) and any(t[0] == "name" and t[1] in ALIASES for t in toks):
            raise ParseError(f"aliases x, y, z, w need at most {len(ALIASES)} variables",
                             text, 0)
        variables = default_names(n)
    if len(toks) == 1:
        raise ParseError("empty polynomial", text, 0)
    p = _Parser(text, toks, _lookup_table(variables), len(variables))
    return Polynomial(len(variables), p.poly())


def parse_ideal_text(text: str) -> tuple:
    """Parse the ``.ideal`` format; returns ``(variable names, GradedIdeal)``.

    Line 1 is ``vars: x0 x1 x2``; every later line that is neither blank nor
    a ``#`` comment holds one generator.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].lstrip().startswith("vars:"):
        raise ParseError("first line must declare variables as 'vars: x0 x1 ...'",
                         lines[0] if lines else text, 0)
    names = lines[0].split(":", 1)[1].split()
    if not names:
        raise ParseError("no variables declared", lines[0], len(lines[0]))
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", lines[0], 0)
    gens = [parse_polynomial(ln, names) for ln in lines[1:]]
    return names, GradedIdeal(len(names), [g for g in gens if not g.is_zero()])


def read_ideal(path: str) -> tuple:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal_text(fh.read())
