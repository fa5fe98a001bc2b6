"""Canonical values, states, and state sets.

Checker values and interpreter values both map into one immutable, hashable
representation before any comparison, so 1-based vs 0-based indexing or
container spellings never matter: comparison is by value.

A canonical value is a tagged tuple:
    ("int", 5)  ("bool", True)  ("str", "abc")  ("model", "NONE")
    ("seq", (v, ...))  ("set", frozenset(v, ...))  ("rec", ((field, v), ...))
    ("fun", ((k, v), ...))
Records keep fields sorted; function pairs are sorted by key rendering.
Sequences of code points are deliberately distinct from the "str" form:
strings were lowered upstream, so the two never compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

CVal = tuple

_TOKEN_RE = re.compile(
    r"""
    (?P<num>-?\d+)
  | (?P<name>[A-Za-z_]\w*(?:!\w+)*)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<punct><<|>>|\|->|:>|@@|\.\.|[{}\[\](),])
    """,
    re.VERBOSE,
)


def cv_int(v: int) -> CVal:
    return ("int", int(v))


def cv_bool(v: bool) -> CVal:
    return ("bool", bool(v))


def cv_str(v: str) -> CVal:
    return ("str", v)


def cv_model(name: str) -> CVal:
    return ("model", name)


def cv_seq(items) -> CVal:
    return ("seq", tuple(items))


def cv_set(items) -> CVal:
    return ("set", frozenset(items))


def cv_rec(pairs) -> CVal:
    return ("rec", tuple(sorted(pairs)))


def cv_fun(pairs) -> CVal:
    return ("fun", tuple(sorted(pairs, key=lambda kv: repr(kv[0]))))


def render_value(v: CVal) -> str:
    tag, payload = v
    if tag in ("int", "bool"):
        return str(payload).upper() if tag == "bool" else str(payload)
    if tag == "str":
        return f'"{payload}"'
    if tag == "model":
        return payload
    if tag == "seq":
        return "<<" + ", ".join(render_value(x) for x in payload) + ">>"
    if tag == "set":
        return "{" + ", ".join(sorted(render_value(x) for x in payload)) + "}"
    if tag == "rec":
        return "[" + ", ".join(f"{k} |-> {render_value(x)}" for k, x in payload) + "]"
    if tag == "fun":
        return "(" + " @@ ".join(f"{render_value(k)} :> {render_value(x)}" for k, x in payload) + ")"
    raise ValueError(f"unknown tag {tag!r}")


class ValueParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"column {pos}: {message}")
        self.pos = pos


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ValueParseError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            self.items.append((kind, m.group(0), pos))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, None, len(self.text))

    def next(self):
        item = self.peek()
        self.i += 1
        return item

    def expect(self, value):
        kind, text, pos = self.next()
        if text != value:
            raise ValueParseError(f"expected {value!r}, found {text!r}", pos)


def parse_value(text: str) -> CVal:
    """Parse one checker-rendered value into canonical form."""
    toks = _Tokens(text)
    value = _value(toks)
    kind, tok, pos = toks.peek()
    if kind is not None:
        raise ValueParseError(f"trailing input {tok!r}", pos)
    return value


def _value(toks: _Tokens) -> CVal:
    kind, tok, pos = toks.next()
    if kind == "num":
        low = int(tok)
        nk, nt, _ = toks.peek()
        if nt == "..":
            toks.next()
            hk, ht, hp = toks.next()
            if hk != "num":
                raise ValueParseError("expected integer after ..", hp)
            return cv_set(cv_int(i) for i in range(low, int(ht) + 1))
        return cv_int(low)
    if kind == "str":
        body = tok[1:-1].replace('\\"', '"').replace("\\\\", "\\")
        return cv_str(body)
    if kind == "name":
        if tok == "TRUE":
            return cv_bool(True)
        if tok == "FALSE":
            return cv_bool(False)
        return cv_model(tok)
    if tok == "<<":
        items = []
        if toks.peek()[1] == ">>":
            toks.next()
            return cv_seq(items)
        while True:
            items.append(_value(toks))
            k, t, p = toks.next()
            if t == ">>":
                return cv_seq(items)
            if t != ",":
                raise ValueParseError(f"expected , or >> in sequence, found {t!r}", p)
    if tok == "{":
        items = []
        if toks.peek()[1] == "}":
            toks.next()
            return cv_set(items)
        while True:
            items.append(_value(toks))
            k, t, p = toks.next()
            if t == "}":
                return cv_set(items)
            if t != ",":
                raise ValueParseError(f"expected , or }} in set, found {t!r}", p)
    if tok == "[":
        pairs = []
        while True:
            fk, ft, fp = toks.next()
            if fk != "name":
                raise ValueParseError(f"expected record field, found {ft!r}", fp)
            toks.expect("|->")
            pairs.append((ft, _value(toks)))
            k, t, p = toks.next()
            if t == "]":
                return cv_rec(pairs)
            if t != ",":
                raise ValueParseError(f"expected , or ] in record, found {t!r}", p)
    if tok == "(":
        # explicit function: (k :> v @@ k :> v ...) — or a parenthesised value
        first = _value(toks)
        k, t, p = toks.peek()
        if t == ")":
            toks.next()
            return first
        pairs = []
        toks.expect(":>")
        pairs.append((first, _value(toks)))
        while True:
            k, t, p = toks.next()
            if t == ")":
                break
            if t != "@@":
                raise ValueParseError(f"expected @@ or ) in function, found {t!r}", p)
            key = _value(toks)
            toks.expect(":>")
            pairs.append((key, _value(toks)))
        return _normalize_fun(pairs)
    raise ValueParseError(f"cannot start a value with {tok!r}", pos)


def _normalize_fun(pairs) -> CVal:
    keys = [k for k, _ in pairs]
    if keys and all(k[0] == "int" for k in keys):
        ints = sorted(k[1] for k in keys)
        if ints == list(range(1, len(ints) + 1)):
            by_key = dict(pairs)
            return cv_seq(by_key[cv_int(i)] for i in range(1, len(ints) + 1))
    return cv_fun(pairs)


def from_python(value) -> CVal:
    """Canonical form of an interpreter-side value (post string lowering)."""
    if isinstance(value, bool):
        return cv_bool(value)
    if isinstance(value, int):
        return cv_int(value)
    if value is None:
        return cv_model("NONE")
    if isinstance(value, str):
        return cv_str(value)
    if isinstance(value, (list, tuple)):
        return cv_seq(from_python(v) for v in value)
    if isinstance(value, (set, frozenset)):
        return cv_set(from_python(v) for v in value)
    if isinstance(value, dict):
        return cv_fun((from_python(k), from_python(v)) for k, v in value.items())
    raise TypeError(f"cannot canonicalize {type(value).__name__}")


# --- states --------------------------------------------------------------


@dataclass(frozen=True)
class State:
    bindings: frozenset[tuple[str, CVal]]

    @classmethod
    def of(cls, **kwargs) -> "State":
        return cls(frozenset((k, from_python(v)) for k, v in kwargs.items()))

    @classmethod
    def from_pairs(cls, pairs) -> "State":
        pairs = tuple(pairs)
        names = [k for k, _ in pairs]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate variable in state: {names}")
        return cls(frozenset(pairs))

    def variables(self) -> set[str]:
        return {k for k, _ in self.bindings}

    def values(self) -> list[CVal]:
        return [v for _, v in self.bindings]


StateSet = frozenset  # of State
