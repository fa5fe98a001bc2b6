"""Parse source text into the restricted AST.

The front door runs CPython's own parser and then narrows the tree to the
subset grammar. Anything Python rejects, or anything outside the subset that
is not one of the named rewrite-target features, raises SubsetParseError with
the first offending span. Rewrite-target features (comprehensions, lambdas,
classes, generators, slices, extra defs) become `Forbidden` leaves instead,
so check_subset can report them with spans.
"""

from __future__ import annotations

import ast

from tlabench.errors import SubsetParseError
from tlabench.frontend import nodes as n

ALLOWED_CALLS = {"len", "range", "abs", "min", "max", "int", "ord", "chr", "sum"}

_BINOPS = {
    ast.Add: "+", ast.Sub: "-", ast.Mult: "*", ast.Div: "/",
    ast.FloorDiv: "//", ast.Mod: "%", ast.Pow: "**",
}
_CMPOPS = {
    ast.Eq: "==", ast.NotEq: "!=", ast.Lt: "<", ast.LtE: "<=",
    ast.Gt: ">", ast.GtE: ">=", ast.In: "in", ast.NotIn: "not in",
    ast.Is: "is", ast.IsNot: "is not",
}
_UNARYOPS = {ast.USub: "-", ast.UAdd: "+", ast.Not: "not"}

_COMPREHENSIONS = (ast.ListComp, ast.SetComp, ast.DictComp)


def _span(node: ast.AST) -> n.Span:
    return n.Span(
        getattr(node, "lineno", 1),
        getattr(node, "col_offset", 0),
        getattr(node, "end_lineno", getattr(node, "lineno", 1)),
        getattr(node, "end_col_offset", getattr(node, "col_offset", 0)),
    )


def _fail(node: ast.AST, message: str):
    sp = _span(node)
    raise SubsetParseError(message, sp.line, sp.col, sp.end_line, sp.end_col)


def _reject_tabs(source: str):
    for i, line in enumerate(source.splitlines(), start=1):
        stripped = line.lstrip(" ")
        if stripped.startswith("\t"):
            raise SubsetParseError("tab indentation is not accepted", i, len(line) - len(stripped))


def parse_program(source: str) -> n.ProgramAst:
    """Parse `source` into a ProgramAst, or raise SubsetParseError."""
    _reject_tabs(source)
    try:
        tree = ast.parse(source)
    except SyntaxError as exc:
        line = exc.lineno or 1
        col = (exc.offset or 1) - 1
        raise SubsetParseError(exc.msg or "invalid syntax", line, max(col, 0)) from None

    # Locally defined names are callable so that recursion and extra defs
    # reach the feature filter instead of dying here.
    local_defs = {s.name for s in ast.walk(tree) if isinstance(s, ast.FunctionDef)}
    conv = _Converter(local_defs)

    source_lines = source.splitlines()
    prog = n.ProgramAst(span=_span(tree) if tree.body else n.Span(1, 0, 1, 0))
    for stmt in tree.body:
        if isinstance(stmt, (ast.Import, ast.ImportFrom)):
            prog.imports.extend(_convert_import(stmt, source_lines))
        elif isinstance(stmt, ast.FunctionDef):
            prog.functions.append(conv.function(stmt))
        elif isinstance(stmt, ast.Assert):
            prog.top_asserts.append(
                n.AssertStmt(_span(stmt), conv.expr(stmt.test), conv.expr(stmt.msg) if stmt.msg else None)
            )
        elif isinstance(stmt, ast.ClassDef):
            prog.functions.append(_forbidden_function(stmt, "classes"))
        elif isinstance(stmt, ast.Expr) and isinstance(stmt.value, ast.Constant) and isinstance(stmt.value.value, str):
            pass  # module docstring: carries no behaviour
        else:
            _fail(stmt, f"top-level {type(stmt).__name__} is not in the subset")
    return prog


def _stmt_text(stmt: ast.stmt, source_lines: list[str]) -> str:
    return "\n".join(source_lines[stmt.lineno - 1:stmt.end_lineno]).strip()


def _convert_import(stmt, source_lines) -> list[n.Import]:
    text = _stmt_text(stmt, source_lines)
    out = []
    if isinstance(stmt, ast.Import):
        for alias in stmt.names:
            if alias.asname:
                _fail(stmt, "import aliases are not in the subset")
            out.append(n.Import(_span(stmt), alias.name.split(".")[0], text))
    else:
        if stmt.module is None or stmt.level:
            _fail(stmt, "relative imports are not in the subset")
        if any(a.asname for a in stmt.names):
            _fail(stmt, "import aliases are not in the subset")
        out.append(n.Import(_span(stmt), stmt.module.split(".")[0], text))
    return out


def _forbidden_function(stmt, feature) -> n.FunctionAst:
    # Banned top-level construct kept as a placeholder function so violations
    # carry spans without aborting the parse.
    body = [n.ForbiddenStmt(_span(stmt), feature, getattr(stmt, "name", ""))]
    return n.FunctionAst(_span(stmt), getattr(stmt, "name", "<forbidden>"), [], body)


def _annotation_text(node: ast.expr | None) -> str | None:
    if node is None:
        return None
    return ast.unparse(node)


class _Converter:
    def __init__(self, local_defs: set[str]):
        self.local_defs = local_defs

    def function(self, fn: ast.FunctionDef) -> n.FunctionAst:
        if fn.decorator_list:
            _fail(fn.decorator_list[0], "decorators are not in the subset")
        a = fn.args
        if a.vararg or a.kwarg or a.kwonlyargs or a.posonlyargs or a.defaults or a.kw_defaults:
            _fail(fn, "only plain positional parameters are in the subset")
        params = [n.Param(arg.arg, _span(arg), _annotation_text(arg.annotation)) for arg in a.args]
        seen = set()
        for p in params:
            if p.name in seen:
                raise SubsetParseError(f"duplicate parameter {p.name!r}", p.span.line, p.span.col)
            seen.add(p.name)
        body = self.block(fn.body)
        if not body:
            _fail(fn, "empty function body")
        return n.FunctionAst(_span(fn), fn.name, params, body, _annotation_text(fn.returns))

    def block(self, stmts: list[ast.stmt]) -> list[n.Stmt]:
        return [self.stmt(s) for s in stmts]

    def stmt(self, s: ast.stmt) -> n.Stmt:
        sp = _span(s)
        if isinstance(s, ast.Assign):
            if len(s.targets) != 1:
                _fail(s, "chained assignment is not in the subset")
            target = s.targets[0]
            if not isinstance(target, (ast.Name, ast.Subscript)):
                _fail(target, "assignment target must be a name or subscript")
            return n.Assign(sp, self.expr(target), self.expr(s.value))
        if isinstance(s, ast.AugAssign):
            if not isinstance(s.target, (ast.Name, ast.Subscript)):
                _fail(s.target, "assignment target must be a name or subscript")
            op = _BINOPS.get(type(s.op))
            if op is None:
                _fail(s, f"augmented operator {type(s.op).__name__} is not in the subset")
            return n.AugAssign(sp, self.expr(s.target), op, self.expr(s.value))
        if isinstance(s, ast.AnnAssign):
            if s.value is None:
                _fail(s, "bare annotations are not in the subset")
            if not isinstance(s.target, ast.Name):
                _fail(s.target, "annotated target must be a name")
            return n.Assign(sp, self.expr(s.target), self.expr(s.value))
        if isinstance(s, ast.If):
            return n.IfStmt(sp, self.expr(s.test), self.block(s.body), self.block(s.orelse))
        if isinstance(s, ast.While):
            if s.orelse:
                _fail(s.orelse[0], "while-else is not in the subset")
            return n.WhileStmt(sp, self.expr(s.test), self.block(s.body))
        if isinstance(s, ast.For):
            if s.orelse:
                _fail(s.orelse[0], "for-else is not in the subset")
            if not isinstance(s.target, ast.Name):
                _fail(s.target, "for target must be a single name")
            return n.ForStmt(sp, n.Name(_span(s.target), s.target.id), self.expr(s.iter), self.block(s.body))
        if isinstance(s, ast.Break):
            return n.Break(sp)
        if isinstance(s, ast.Continue):
            return n.Continue(sp)
        if isinstance(s, ast.Return):
            return n.Return(sp, self.expr(s.value) if s.value else None)
        if isinstance(s, ast.Pass):
            return n.Pass(sp)
        if isinstance(s, ast.Assert):
            return n.AssertStmt(sp, self.expr(s.test), self.expr(s.msg) if s.msg else None)
        if isinstance(s, ast.Expr):
            return n.ExprStmt(sp, self.expr(s.value))
        if isinstance(s, ast.FunctionDef):
            return n.ForbiddenStmt(sp, "multiple function declarations", s.name)
        if isinstance(s, ast.ClassDef):
            return n.ForbiddenStmt(sp, "classes", s.name)
        _fail(s, f"{type(s).__name__} statement is not in the subset")

    def expr(self, e: ast.expr) -> n.Expr:
        sp = _span(e)
        if isinstance(e, ast.Constant):
            v = e.value
            if isinstance(v, bool):
                return n.BoolLit(sp, v)
            if isinstance(v, int):
                return n.IntLit(sp, v)
            if isinstance(v, float):
                return n.FloatLit(sp, v)
            if isinstance(v, str):
                return n.StrLit(sp, v)
            if v is None:
                return n.NoneLit(sp)
            _fail(e, f"{type(v).__name__} literal is not in the subset")
        if isinstance(e, ast.Name):
            return n.Name(sp, e.id)
        if isinstance(e, ast.Tuple):
            return n.TupleLit(sp, [self.expr(x) for x in e.elts])
        if isinstance(e, ast.List):
            return n.ListLit(sp, [self.expr(x) for x in e.elts])
        if isinstance(e, ast.Dict):
            if any(k is None for k in e.keys):
                _fail(e, "dict unpacking is not in the subset")
            return n.DictLit(sp, [self.expr(k) for k in e.keys], [self.expr(v) for v in e.values])
        if isinstance(e, ast.Set):
            # Set displays fall to the type filter, not the parser.
            return n.SetLit(sp, [self.expr(x) for x in e.elts])
        if isinstance(e, ast.Subscript):
            if isinstance(e.slice, ast.Slice):
                return n.Forbidden(sp, "slice operations")
            return n.Subscript(sp, self.expr(e.value), self.expr(e.slice))
        if isinstance(e, ast.Call):
            return self.call(e)
        if isinstance(e, ast.BinOp):
            op = _BINOPS.get(type(e.op))
            if op is None:
                _fail(e, f"operator {type(e.op).__name__} is not in the subset")
            return n.BinOp(sp, self.expr(e.left), op, self.expr(e.right))
        if isinstance(e, ast.UnaryOp):
            op = _UNARYOPS.get(type(e.op))
            if op is None:
                _fail(e, f"operator {type(e.op).__name__} is not in the subset")
            return n.UnaryOp(sp, op, self.expr(e.operand))
        if isinstance(e, ast.BoolOp):
            return n.BoolOp(sp, "and" if isinstance(e.op, ast.And) else "or", [self.expr(v) for v in e.values])
        if isinstance(e, ast.Compare):
            ops = []
            for op in e.ops:
                text = _CMPOPS.get(type(op))
                if text is None:
                    _fail(e, f"comparison {type(op).__name__} is not in the subset")
                ops.append(text)
            return n.Compare(sp, self.expr(e.left), ops, [self.expr(c) for c in e.comparators])
        if isinstance(e, ast.Lambda):
            return n.Forbidden(sp, "lambda expressions")
        if isinstance(e, _COMPREHENSIONS):
            return n.Forbidden(sp, "list comprehension")
        if isinstance(e, ast.GeneratorExp):
            return n.Forbidden(sp, "generators")
        if isinstance(e, (ast.Yield, ast.YieldFrom)):
            return n.Forbidden(sp, "generators")
        if isinstance(e, ast.Attribute):
            _fail(e, "attribute access outside call position is not in the subset")
        _fail(e, f"{type(e).__name__} expression is not in the subset")

    def call(self, e: ast.Call) -> n.Expr:
        sp = _span(e)
        if e.keywords:
            _fail(e, "keyword arguments are not in the subset")
        func = e.func
        if isinstance(func, ast.Name):
            name = func.id
            if name not in ALLOWED_CALLS and name not in self.local_defs:
                _fail(func, f"call to {name!r} is not in the subset")
        elif isinstance(func, ast.Attribute) and isinstance(func.value, ast.Name):
            if func.value.id != "math":
                _fail(func, "only math.* dotted calls are in the subset")
            name = f"math.{func.attr}"
        elif isinstance(func, ast.Lambda):
            return n.Forbidden(sp, "lambda expressions")
        else:
            _fail(func, "call target must be a plain or dotted name")
        args = []
        for a in e.args:
            if isinstance(a, ast.Starred):
                _fail(a, "star arguments are not in the subset")
            args.append(self.expr(a))
        return n.Call(sp, name, args)
