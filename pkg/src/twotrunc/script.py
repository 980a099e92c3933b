"""Line-oriented truncation scripts.

Grammar (one directive per line, ``#`` starts a comment)::

    script    ::= { line }
    line      ::= [ directive ] [ "#" { any } ] NEWLINE
    directive ::= "cube" INT | "truncate" FACET FACET
    FACET     ::= "x" INT ( "+" | "-" ) | "s" INT
    INT       ::= [1-9][0-9]*

Exactly one ``cube`` line is required and it must precede every ``truncate``.
Facet names are only checked for shape here; whether they exist is decided
when the script runs, since ``s<k>`` names the facet created by step k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .polytope import _FACET_RE

_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"^[1-9][0-9]*$")


class ScriptError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = "" if line is None else f"line {line}" + ("" if column is None else f", column {column}") + ": "
        super().__init__(where + message)


@dataclass
class TruncationScript:
    dim: int
    steps: list[tuple[str, str]] = field(default_factory=list)

    def to_text(self) -> str:
        return "".join([f"cube {self.dim}\n"] + [f"truncate {a} {b}\n" for a, b in self.steps])


def parse_script(text: str) -> TruncationScript:
    dim = None
    steps: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if not tokens:
            continue
        (word, col), args = tokens[0], tokens[1:]
        if word == "cube":
            if dim is not None:
                raise ScriptError("cube dimension declared twice", lineno, col)
            if len(args) != 1:
                raise ScriptError("cube takes exactly one argument", lineno, col)
            value, vcol = args[0]
            if not _INT.match(value):
                raise ScriptError(f"cube dimension must be a positive integer, got {value!r}", lineno, vcol)
            dim = int(value)
        elif word == "truncate":
            if dim is None:
                raise ScriptError("missing cube directive", lineno, col)
            if len(args) != 2:
                raise ScriptError("truncate takes exactly two facet names", lineno, col)
            for name, ncol in args:
                if not _FACET_RE.match(name):
                    raise ScriptError(f"malformed facet name {name!r}", lineno, ncol)
            steps.append((args[0][0], args[1][0]))
        else:
            raise ScriptError(f"unknown directive {word!r}", lineno, col)
    if dim is None:
        raise ScriptError("missing cube directive")
    return TruncationScript(dim, steps)
