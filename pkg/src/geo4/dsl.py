"""Text formats: group words and presentation literals, twist words, and recipes.

Group words:   a1*b2^-1, [a1, b2], (x*y)^3, lhs = rhs (read as lhs*rhs^-1)
Presentations: group{ gens: a1,b2; rels: [a1,b2], a1, b2^2 }
Twist words:   t[c1] t[c3]^-1 conj(t[b], by=t[c2] t[c3]) refl(t[y]) (t[a] t[b])^6
Recipes:       Node(positional, key=value, ...) with '#' comments to end of line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .errors import InvalidWord, ParseError

# ---------------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class Tok:
    kind: str  # name, int, str, op, end
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_.']*)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<op>[\[\](){},;:=*^/\-+])
""", re.VERBOSE)


def tokenize(text: str) -> list[Tok]:
    toks: list[Tok] = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind not in ("ws", "comment"):
            toks.append(Tok(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    toks.append(Tok("end", "", line, col))
    return toks


class _Stream:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Tok:
        t = self.toks[self.i]
        if t.kind != "end":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.cur.kind in ("op", "name") and self.cur.text == text

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.next()

    def fail(self, msg: str, tok: Optional[Tok] = None):
        t = tok or self.cur
        got = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"{msg}, got {got}", t.line, t.col)

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        elif self.at("+"):
            self.next()
        if self.cur.kind != "int":
            self.fail("expected integer")
        return sign * int(self.next().text)

    def done(self):
        if self.cur.kind != "end":
            self.fail("unexpected trailing input")


# ---------------------------------------------------------------------------
# group words


def _gw_inv(w):
    return tuple(-x for x in reversed(w))


def _gw_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class _GroupWordParser:
    def __init__(self, s: _Stream, gens: Sequence[str]):
        self.s = s
        self.index = {g: i + 1 for i, g in enumerate(gens)}

    def equation(self):
        lhs = self.expr()
        if self.s.at("="):
            self.s.next()
            rhs = self.expr()
            return _gw_reduce(lhs + _gw_inv(rhs))
        return lhs

    def expr(self):
        out = self.factor()
        while True:
            if self.s.at("*"):
                self.s.next()
                out = out + self.factor()
            elif self.s.cur.kind in ("name", "int") or self.s.at("[") or self.s.at("("):
                out = out + self.factor()
            else:
                return _gw_reduce(out)

    def factor(self):
        base = self.primary()
        if self.s.at("^"):
            self.s.next()
            n = self.s.signed_int()
            base = base * n if n >= 0 else _gw_inv(base) * (-n)
        return base

    def primary(self):
        s = self.s
        t = s.cur
        if t.kind == "name":
            s.next()
            if t.text not in self.index:
                raise InvalidWord(f"unknown generator {t.text!r} at line {t.line}, column {t.col}")
            return (self.index[t.text],)
        if t.kind == "int" and t.text == "1":
            s.next()
            return ()
        if s.at("["):
            s.next()
            u = self.expr()
            s.expect(",")
            v = self.expr()
            s.expect("]")
            return _gw_reduce(u + v + _gw_inv(u) + _gw_inv(v))
        if s.at("("):
            s.next()
            u = self.expr()
            s.expect(")")
            return u
        s.fail("expected generator, '[' or '('")


def parse_group_word(text: str, gens: Sequence[str]) -> tuple[int, ...]:
    s = _Stream(text)
    w = _GroupWordParser(s, gens).equation()
    s.done()
    return w


def parse_group(text: str):
    from .grouppres import FpGroup
    s = _Stream(text)
    s.expect("group")
    s.expect("{")
    s.expect("gens")
    s.expect(":")
    gens = []
    while s.cur.kind == "name":
        gens.append(s.next().text)
        if s.at(","):
            s.next()
        else:
            break
    rels = []
    if s.at(";"):
        s.next()
        if s.at("rels"):
            s.next()
            s.expect(":")
            p = _GroupWordParser(s, gens)
            if not s.at("}") and not s.at(";"):
                rels.append(p.equation())
                while s.at(","):
                    s.next()
                    rels.append(p.equation())
            if s.at(";"):
                s.next()
    s.expect("}")
    s.done()
    return FpGroup(tuple(gens), tuple(rels))


def format_group(G) -> str:
    rels = ", ".join(G.word_str(r) for r in G.relators)
    return f"group{{ gens: {','.join(G.generators)}; rels: {rels} }}"


# ---------------------------------------------------------------------------
# twist words


class _TwistParser:
    def __init__(self, s: _Stream):
        self.s = s

    def word(self):
        from .mcg import MappingClassWord
        letters = []
        while not (self.s.cur.kind == "end" or self.s.at(")") or self.s.at(",")):
            letters.extend(self.factor().letters)
        return MappingClassWord(tuple(letters))

    def factor(self):
        from .mcg import MappingClassWord
        base = self.primary()
        if self.s.at("^"):
            self.s.next()
            n = self.s.signed_int()
            if n == 0:
                return MappingClassWord(())
            if len(base) == 1:
                l = base.letters[0]
                from .mcg import Letter
                return MappingClassWord((Letter(l.curve, l.power * n, l.conjugator, l.reflected),))
            base = base * n if n > 0 else base.inverse() * (-n)
        return base

    def primary(self):
        from .mcg import Letter, MappingClassWord
        s = self.s
        if s.at("t") and s.peek().text == "[":
            s.next()
            s.expect("[")
            if s.cur.kind != "name":
                s.fail("expected curve name")
            name = s.next().text
            s.expect("]")
            return MappingClassWord((Letter(name),))
        if s.at("conj"):
            s.next()
            s.expect("(")
            inner = self.word()
            s.expect(",")
            s.expect("by")
            s.expect("=")
            by = self.word()
            s.expect(")")
            return inner.conjugate(by)
        if s.at("refl"):
            s.next()
            s.expect("(")
            inner = self.word()
            s.expect(")")
            return MappingClassWord(tuple(
                Letter(l.curve, l.power, l.conjugator, not l.reflected) for l in inner.letters))
        if s.at("("):
            s.next()
            inner = self.word()
            s.expect(")")
            return inner
        s.fail("expected t[...], conj(...), refl(...) or '('")


def parse_word(text: str):
    s = _Stream(text)
    w = _TwistParser(s).word()
    s.done()
    return w


def _format_letter(l) -> str:
    core = f"t[{l.curve}]"
    if l.conjugator is not None:
        core = f"conj({core}, by={format_word(l.conjugator)})"
    if l.reflected:
        # the stored conjugator sits inside the reflection
        core = f"refl({core})"
    if l.power != 1:
        core = f"{core}^{l.power}"
    return core


def format_word(w) -> str:
    return " ".join(_format_letter(l) for l in w.letters)


# ---------------------------------------------------------------------------
# recipes


@dataclass(frozen=True)
class Node:
    kind: str
    args: tuple = ()
    kwargs: tuple = ()  # ordered (key, value) pairs

    def get(self, key: str, default: Any = None) -> Any:
        for k, v in self.kwargs:
            if k == key:
                return v
        return default

    @property
    def children(self) -> list["Node"]:
        out = [a for a in self.args if isinstance(a, Node)]
        for k, v in self.kwargs:
            if isinstance(v, Node):
                out.append(v)
            elif isinstance(v, list):
                out.extend(x for x in v if isinstance(x, Node))
        return out

    @property
    def name(self) -> Optional[str]:
        for a in self.args:
            if isinstance(a, Ident):
                return a.text
        return None

    def replace_kw(self, key: str, value: Any) -> "Node":
        kws = []
        hit = False
        for k, v in self.kwargs:
            if k == key:
                kws.append((k, value))
                hit = True
            else:
                kws.append((k, v))
        if not hit:
            kws.append((key, value))
        return Node(self.kind, self.args, tuple(kws))


@dataclass(frozen=True)
class Ident:
    text: str


class _RecipeParser:
    def __init__(self, s: _Stream):
        self.s = s

    def node(self) -> Node:
        s = self.s
        if s.cur.kind != "name":
            s.fail("expected node name")
        kind = s.next().text
        s.expect("(")
        args, kwargs = [], []
        if not s.at(")"):
            while True:
                if s.cur.kind == "name" and s.peek().text == "=" and s.peek().kind == "op":
                    ktok = s.next()
                    key = ktok.text
                    s.next()
                    if any(k == key for k, _ in kwargs):
                        s.fail(f"duplicate key {key!r}", ktok)
                    kwargs.append((key, self.value()))
                else:
                    if kwargs:
                        s.fail("positional argument after keyword argument")
                    args.append(self.value())
                if s.at(","):
                    s.next()
                    continue
                break
        s.expect(")")
        return Node(kind, tuple(args), tuple(kwargs))

    def value(self):
        s = self.s
        t = s.cur
        if t.kind == "name":
            if s.peek().text == "(" and s.peek().kind == "op":
                return self.node()
            s.next()
            if t.text == "true":
                return True
            if t.text == "false":
                return False
            return Ident(t.text)
        if t.kind == "str":
            s.next()
            return re.sub(r"\\(.)", r"\1", t.text[1:-1], flags=re.S)
        if t.kind == "int" or s.at("-"):
            n = s.signed_int()
            if s.at("/"):
                s.next()
                d = s.signed_int()
                if d == 0:
                    s.fail("zero denominator", t)
                return Fraction(n, d)
            return n
        if s.at("["):
            s.next()
            items = []
            if not s.at("]"):
                items.append(self.value())
                while s.at(","):
                    s.next()
                    items.append(self.value())
            s.expect("]")
            return items
        s.fail("expected value")


def parse_recipe(text: str) -> Node:
    s = _Stream(text)
    n = _RecipeParser(s).node()
    s.done()
    return n


def _fmt_value(v, indent: int) -> str:
    if isinstance(v, Node):
        return _fmt_node(v, indent)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Ident):
        return v.text
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, list):
        one = "[" + ", ".join(_fmt_value(x, indent) for x in v) + "]"
        if "\n" not in one and len(one) + indent <= 100:
            return one
        pad = " " * (indent + 2)
        return "[\n" + ",\n".join(pad + _fmt_value(x, indent + 2) for x in v) + "\n" + " " * indent + "]"
    raise TypeError(f"cannot format {v!r}")


def _fmt_node(n: Node, indent: int) -> str:
    flat = [_fmt_value(a, indent) for a in n.args] + [f"{k}={_fmt_value(v, indent)}" for k, v in n.kwargs]
    one = f"{n.kind}(" + ", ".join(flat) + ")"
    if not n.children and len(one) + indent <= 100:
        return one
    pad = " " * (indent + 2)
    parts = [_fmt_value(a, indent + 2) for a in n.args]
    parts += [f"{k}={_fmt_value(v, indent + 2)}" for k, v in n.kwargs]
    return f"{n.kind}(\n" + ",\n".join(pad + p for p in parts) + "\n" + " " * indent + ")"


def print_recipe(n: Node) -> str:
    return _fmt_node(n, 0) + "\n"
