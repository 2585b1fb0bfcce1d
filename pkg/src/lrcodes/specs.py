"""Compact construction spec strings, e.g. ``hypergraph:beta=2`` or
``product:(spc:n=3)x(spc:n=3)``. Specs print back in canonical form, so a
report's ``spec`` field rebuilds the same code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SpecParseError

# family -> ordered parameter names; "*" marks a nested spec
FAMILIES = {
    "regular": ("k", "r"),
    "hypergraph": ("beta",),
    "pg": ("s",),
    "ag": ("s",),
    "sts": ("s",),
    "r2chain": ("t", "k"),
    "mols": ("r", "t"),
    "spc": ("n",),
    "simplex": ("m",),
    "product": ("*left", "*right"),
    "eq9": ("r", "*inner"),
    "fixture": ("$name",),
}
ALIASES = {"graph": "regular", "regular_graph": "regular", "steiner": "sts"}


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    params: tuple

    def get(self, key):
        return dict(self.params)[key]

    def __str__(self):
        p = dict(self.params)
        if self.family == "product":
            return f"product:({p['left']})x({p['right']})"
        if self.family == "fixture":
            return f"fixture:{p['name']}"
        parts = []
        for key, val in self.params:
            parts.append(f"{key}=({val})" if isinstance(val, ConstructionSpec) else f"{key}={val}")
        return f"{self.family}:{','.join(parts)}"


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0

    def error(self, msg):
        raise SpecParseError(f"{msg} at offset {self.pos} in {self.text!r}")

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self):
        start = self.pos
        while self.peek() and (self.peek().isalnum() or self.peek() == "_"):
            self.pos += 1
        if start == self.pos:
            self.error("expected a name")
        return self.text[start:self.pos]

    def nested(self):
        self.expect("(")
        inner = self.spec()
        self.expect(")")
        return inner

    def spec(self) -> ConstructionSpec:
        family = self.ident().lower()
        family = ALIASES.get(family, family)
        if family not in FAMILIES:
            self.error(f"unknown family {family!r}")
        self.expect(":")
        if family == "product":
            factors = [self.nested()]
            while self.peek() == "x":
                self.pos += 1
                factors.append(self.nested())
            if len(factors) < 2:
                self.error("product needs at least two factors")
            acc = factors[0]
            for f in factors[1:]:
                acc = ConstructionSpec("product", (("left", acc), ("right", f)))
            return acc
        if family == "fixture":
            name = self.ident()
            if name == "name" and self.peek() == "=":
                self.pos += 1
                name = self.ident()
            return ConstructionSpec("fixture", (("name", name),))
        wanted = {p.lstrip("*"): p.startswith("*") for p in FAMILIES[family]}
        got = {}
        while True:
            key = self.ident()
            if key not in wanted:
                self.error(f"unknown parameter {key!r} for {family}")
            if key in got:
                self.error(f"duplicate parameter {key!r}")
            self.expect("=")
            if wanted[key]:
                got[key] = self.nested()
            else:
                start = self.pos
                while self.peek().isdigit() or (self.peek() == "-" and self.pos == start):
                    self.pos += 1
                try:
                    got[key] = int(self.text[start:self.pos])
                except ValueError:
                    self.error(f"parameter {key!r} needs an integer")
            if self.peek() != ",":
                break
            self.pos += 1
        missing = [k for k in wanted if k not in got]
        if missing:
            self.error(f"missing parameter(s) {', '.join(missing)} for {family}")
        return ConstructionSpec(family, tuple((k, got[k]) for k in wanted))


def parse_spec(text: str) -> ConstructionSpec:
    p = _Parser(text)
    spec = p.spec()
    if p.pos != len(p.text):
        p.error("trailing characters")
    return spec
