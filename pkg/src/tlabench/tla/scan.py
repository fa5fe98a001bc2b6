"""Token-level structural scan of TLA+ module text.

This is deliberately not a TLA+ parser. The scanner masks comments and string
literals, locates the module header and terminator, collects EXTENDS /
VARIABLE(S) / CONSTANT(S) declarations, and slices the text into operator
definitions (`Name == ...` at column zero). Per-operator primed variables and
UNCHANGED coverage come from token matches inside the definition's range.
Offsets index the original text so repairs can splice bytes precisely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from tlabench.errors import NoModuleHeaderError, UnbalancedDefinitionError

_HEADER_RE = re.compile(r"^-{4,}\s*MODULE\s+(\w+)\s*-{4,}.*$", re.MULTILINE)
_TERMINATOR_RE = re.compile(r"^={4,}\s*$", re.MULTILINE)
_DEF_RE = re.compile(
    r"^(?P<name>[A-Za-z_]\w*)\s*(?:\((?P<params>[^)]*)\))?\s*==(?!=)", re.MULTILINE
)
_PRIME_RE = re.compile(r"\b([A-Za-z_]\w*)\s*'")
_IDENT_RE = re.compile(r"[A-Za-z_]\w*")
_UNCHANGED_TUPLE_RE = re.compile(r"UNCHANGED\s*<<(.*?)>>", re.DOTALL)
_UNCHANGED_SINGLE_RE = re.compile(r"UNCHANGED\s+([A-Za-z_]\w*)")


@dataclass
class ActionDef:
    name: str
    body_start: int  # offset just after the '==' token
    body_end: int    # offset where the next definition (or terminator) starts
    primed_vars: frozenset[str]
    has_unchanged: bool
    unchanged_vars: frozenset[str]


@dataclass
class TlaModuleOutline:
    module_name: str
    extends: list[str]
    variables: list[str]
    constants: list[str]
    actions: list[ActionDef]
    next_disjuncts: list[str]
    has_assertion: bool
    warnings: list[str] = field(default_factory=list)
    # splice points for the repair pass
    header_end: int = 0
    extends_span: tuple[int, int] | None = None
    body_end: int = 0

    def action(self, name: str) -> ActionDef | None:
        for a in self.actions:
            if a.name == name:
                return a
        return None


def mask_comments(text: str) -> str:
    """Same-length copy with comments and string literals spaced out."""
    out = list(text)
    i = 0
    depth = 0
    in_line = False
    in_str = False
    while i < len(text):
        ch = text[i]
        two = text[i:i + 2]
        if in_line:
            if ch == "\n":
                in_line = False
            else:
                out[i] = " "
            i += 1
        elif in_str:
            if ch == "\n" or ch == '"':
                in_str = False
            else:
                out[i] = " "
            i += 1
        elif depth > 0:
            if two == "(*":
                depth += 1
                out[i] = out[i + 1] = " "
                i += 2
            elif two == "*)":
                depth -= 1
                out[i] = out[i + 1] = " "
                i += 2
            else:
                if ch != "\n":
                    out[i] = " "
                i += 1
        elif two == "\\*":
            in_line = True
            out[i] = out[i + 1] = " "
            i += 2
        elif two == "(*":
            depth = 1
            out[i] = out[i + 1] = " "
            i += 2
        elif ch == '"':
            in_str = True
            out[i] = " "
            i += 1
        else:
            i += 1
    return "".join(out)


def _skip_ws(text: str, i: int, end: int) -> int:
    while i < end and text[i] in " \t\n":
        i += 1
    return i


def _collect_decls(masked, keywords, start, end):
    """All `KEYWORD name, name, ...` declarations in masked[start:end].

    Returns (names in order, span of each declaration in absolute offsets).
    """
    names: list[str] = []
    spans: list[tuple[int, int]] = []
    pattern = re.compile(r"\b(?:%s)\b" % "|".join(keywords))
    for m in pattern.finditer(masked, start, end):
        i = m.end()
        while True:
            j = _skip_ws(masked, i, end)
            ident = _IDENT_RE.match(masked, j)
            if not ident or ident.start() >= end:
                break
            names.append(ident.group(0))
            i = ident.end()
            j = _skip_ws(masked, i, end)
            if j < end and masked[j] == ",":
                i = j + 1
            else:
                break
        spans.append((m.start(), i))
    return names, spans


def scan_module(text: str) -> TlaModuleOutline:
    masked = mask_comments(text)

    header = _HEADER_RE.search(masked)
    if not header:
        raise NoModuleHeaderError("no ---- MODULE <name> ---- header found")
    module_name = header.group(1)
    header_end = header.end()

    terminator = _TERMINATOR_RE.search(masked, header_end)
    search_end = terminator.start() if terminator else len(masked)

    defs = [m for m in _DEF_RE.finditer(masked, header_end, search_end)]
    if not terminator:
        if defs:
            raise UnbalancedDefinitionError(
                f"definition {defs[-1].group('name')!r} never terminates: no ==== line"
            )
        raise UnbalancedDefinitionError("module has no ==== terminator")

    decl_end = defs[0].start() if defs else search_end
    extends, ext_spans = _collect_decls(masked, ("EXTENDS",), header_end, decl_end)
    extends_span = ext_spans[0] if ext_spans else None
    variables, _ = _collect_decls(masked, ("VARIABLES", "VARIABLE"), header_end, decl_end)
    constants, _ = _collect_decls(masked, ("CONSTANTS", "CONSTANT"), header_end, decl_end)

    actions: list[ActionDef] = []
    for idx, m in enumerate(defs):
        body_start = m.end()
        body_end = defs[idx + 1].start() if idx + 1 < len(defs) else terminator.start()
        body = masked[body_start:body_end]
        primed = frozenset(_PRIME_RE.findall(body))
        unchanged_vars: set[str] = set()
        for um in _UNCHANGED_TUPLE_RE.finditer(body):
            unchanged_vars.update(_IDENT_RE.findall(um.group(1)))
        stripped = _UNCHANGED_TUPLE_RE.sub(" ", body)
        for um in _UNCHANGED_SINGLE_RE.finditer(stripped):
            unchanged_vars.add(um.group(1))
        actions.append(
            ActionDef(
                name=m.group("name"),
                body_start=body_start,
                body_end=body_end,
                primed_vars=primed,
                has_unchanged="UNCHANGED" in body,
                unchanged_vars=frozenset(unchanged_vars),
            )
        )

    op_names = {a.name for a in actions}
    next_disjuncts: list[str] = []
    next_def = next((a for a in actions if a.name == "Next"), None)
    if next_def:
        body = masked[next_def.body_start:next_def.body_end]
        for piece in body.split("\\/"):
            for ident in _IDENT_RE.findall(piece):
                if ident in op_names and ident != "Next":
                    if ident not in next_disjuncts:
                        next_disjuncts.append(ident)
                    break

    outline = TlaModuleOutline(
        module_name=module_name,
        extends=extends,
        variables=variables,
        constants=constants,
        actions=actions,
        next_disjuncts=next_disjuncts,
        has_assertion="Assertion" in op_names,
        header_end=header_end,
        extends_span=extends_span,
        body_end=terminator.start(),
    )
    var_set = set(variables)
    for a in actions:
        stray = a.primed_vars - var_set
        if stray:
            outline.warnings.append(
                f"action {a.name} primes undeclared names: {sorted(stray)}"
            )
    return outline
