"""Static filters: libraries, language features, types.

check_subset is total over parsed programs and returns violations ordered by
source position. An empty result means the program is accepted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from tlabench.frontend import nodes as n

ALLOWED_IMPORTS = {"typing", "math"}

# The seven rewrite-target feature names, spelled exactly as reported.
FEATURE_NAMES = (
    "multiple function declarations",
    "recursion",
    "list comprehension",
    "slice operations",
    "classes",
    "lambda expressions",
    "generators",
)

# Annotation names that survive the type filter (typing spellings included).
ALLOWED_ANNOTATIONS = {
    "None", "int", "float", "bool", "str", "list", "tuple", "dict",
    "List", "Tuple", "Dict", "Iterable", "Optional",
    "typing.List", "typing.Tuple", "typing.Dict", "typing.Iterable", "typing.Optional",
}


class ViolationKind(enum.Enum):
    ForbiddenImport = "ForbiddenImport"
    ForbiddenFeature = "ForbiddenFeature"
    ForbiddenType = "ForbiddenType"
    ParseFailure = "ParseFailure"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: str
    span: n.Span

    def __str__(self):
        return f"{self.kind.value}({self.detail}) at {self.span}"


def check_subset(prog: n.ProgramAst) -> list[Violation]:
    out: list[Violation] = []
    out.extend(_check_imports(prog))
    out.extend(_check_features(prog))
    out.extend(_check_types(prog))
    out.sort(key=lambda v: (v.span.line, v.span.col))
    return out


def _check_imports(prog):
    for imp in prog.imports:
        if imp.module not in ALLOWED_IMPORTS:
            yield Violation(ViolationKind.ForbiddenImport, imp.module, imp.span)


def _check_features(prog):
    for extra in prog.functions[1:]:
        yield Violation(
            ViolationKind.ForbiddenFeature, "multiple function declarations", extra.span
        )
    for fn in prog.functions:
        yield from _function_features(fn)
    for stmt in prog.top_asserts:
        yield from _embedded_features(stmt, enclosing=None)


def _function_features(fn: n.FunctionAst):
    for stmt in fn.body:
        yield from _embedded_features(stmt, enclosing=fn.name)


def _embedded_features(root, enclosing):
    for node in n.walk(root):
        if isinstance(node, (n.Forbidden, n.ForbiddenStmt)):
            yield Violation(ViolationKind.ForbiddenFeature, node.feature, node.span)
        elif isinstance(node, n.Call):
            if enclosing is not None and node.func == enclosing:
                yield Violation(ViolationKind.ForbiddenFeature, "recursion", node.span)


def _check_types(prog):
    for fn in prog.functions:
        for p in fn.params:
            yield from _annotation(p.annotation, p.span)
        yield from _annotation(fn.returns, fn.span)
        for stmt in fn.body:
            yield from _literal_types(stmt)
    for stmt in prog.top_asserts:
        yield from _literal_types(stmt)


def _annotation(text, span):
    if text is None:
        return
    # Strip subscripts: List[int] -> List plus int, recursively.
    for name in _annotation_names(text):
        if name not in ALLOWED_ANNOTATIONS:
            yield Violation(ViolationKind.ForbiddenType, f"annotation {name}", span)


def _annotation_names(text: str):
    token = ""
    for ch in text:
        if ch.isalnum() or ch in "._":
            token += ch
        else:
            if token:
                yield token
            token = ""
    if token:
        yield token


def _literal_types(root):
    for node in n.walk(root):
        if isinstance(node, n.SetLit):
            yield Violation(ViolationKind.ForbiddenType, "set literal", node.span)
