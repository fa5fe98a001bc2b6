"""Render the restricted AST back to source text.

The renderer is the inverse direction of the parser: for any tree the
transform can produce, parse(render(tree)) rebuilds an equivalent tree.
Parenthesisation is precedence-driven and deliberately conservative so the
output is stable across runs.
"""

from __future__ import annotations

from tlabench.errors import InternalLoweringError
from tlabench.frontend import nodes as n

_PREC_OR = 1
_PREC_AND = 2
_PREC_NOT = 3
_PREC_CMP = 4
_PREC_ADD = 5
_PREC_MUL = 6
_PREC_UNARY = 7
_PREC_POW = 8
_PREC_ATOM = 9

_BIN_PREC = {
    "+": _PREC_ADD, "-": _PREC_ADD,
    "*": _PREC_MUL, "/": _PREC_MUL, "//": _PREC_MUL, "%": _PREC_MUL,
    "**": _PREC_POW,
}


def render_expr(e: n.Expr) -> str:
    return _expr(e)[0]


def _expr(e: n.Expr) -> tuple[str, int]:
    """Return (text, precedence of the outermost operator)."""
    if isinstance(e, n.IntLit):
        return repr(e.value), _PREC_ATOM
    if isinstance(e, n.FloatLit):
        return repr(e.value), _PREC_ATOM
    if isinstance(e, n.BoolLit):
        return ("True" if e.value else "False"), _PREC_ATOM
    if isinstance(e, n.StrLit):
        return repr(e.value), _PREC_ATOM
    if isinstance(e, n.NoneLit):
        return "None", _PREC_ATOM
    if isinstance(e, n.Name):
        return e.id, _PREC_ATOM
    if isinstance(e, n.TupleLit):
        if not e.elts:
            return "()", _PREC_ATOM
        inner = ", ".join(_expr(x)[0] for x in e.elts)
        if len(e.elts) == 1:
            inner += ","
        return f"({inner})", _PREC_ATOM
    if isinstance(e, n.ListLit):
        return "[" + ", ".join(_expr(x)[0] for x in e.elts) + "]", _PREC_ATOM
    if isinstance(e, n.DictLit):
        items = ", ".join(
            f"{_expr(k)[0]}: {_expr(v)[0]}" for k, v in zip(e.keys, e.values)
        )
        return "{" + items + "}", _PREC_ATOM
    if isinstance(e, n.Subscript):
        base = _wrap(e.base, _PREC_ATOM)
        return f"{base}[{_expr(e.index)[0]}]", _PREC_ATOM
    if isinstance(e, n.Call):
        args = ", ".join(_expr(a)[0] for a in e.args)
        return f"{e.func}({args})", _PREC_ATOM
    if isinstance(e, n.BinOp):
        prec = _BIN_PREC[e.op]
        if e.op == "**":
            left = _wrap(e.left, prec + 1)   # right-associative
            right = _wrap(e.right, prec)
        else:
            left = _wrap(e.left, prec)
            right = _wrap(e.right, prec + 1)
        return f"{left} {e.op} {right}", prec
    if isinstance(e, n.UnaryOp):
        if e.op == "not":
            return f"not {_wrap(e.operand, _PREC_NOT)}", _PREC_NOT
        return f"{e.op}{_wrap(e.operand, _PREC_UNARY)}", _PREC_UNARY
    if isinstance(e, n.BoolOp):
        prec = _PREC_AND if e.op == "and" else _PREC_OR
        parts = [_wrap(v, prec + 1) for v in e.values]
        return f" {e.op} ".join(parts), prec
    if isinstance(e, n.Compare):
        parts = [_wrap(e.left, _PREC_CMP + 1)]
        for op, cmp in zip(e.ops, e.comparators):
            parts.append(op)
            parts.append(_wrap(cmp, _PREC_CMP + 1))
        return " ".join(parts), _PREC_CMP
    if isinstance(e, (n.Forbidden, n.SetLit)):
        raise InternalLoweringError(f"cannot render {type(e).__name__}")
    raise InternalLoweringError(f"unknown expression node {type(e).__name__}")


def _wrap(e: n.Expr, minimum: int) -> str:
    text, prec = _expr(e)
    if prec < minimum:
        return f"({text})"
    return text


def render_stmts(stmts: list[n.Stmt], indent: int = 0) -> list[str]:
    pad = "    " * indent
    out: list[str] = []
    for s in stmts:
        if isinstance(s, n.Assign):
            out.append(f"{pad}{render_expr(s.target)} = {render_expr(s.value)}")
        elif isinstance(s, n.AugAssign):
            out.append(f"{pad}{render_expr(s.target)} {s.op}= {render_expr(s.value)}")
        elif isinstance(s, n.IfStmt):
            out.append(f"{pad}if {render_expr(s.cond)}:")
            out.extend(render_stmts(s.body, indent + 1) or [pad + "    pass"])
            if s.orelse:
                if len(s.orelse) == 1 and isinstance(s.orelse[0], n.IfStmt):
                    elif_lines = render_stmts(s.orelse, indent)
                    elif_lines[0] = pad + "el" + elif_lines[0].lstrip()
                    out.extend(elif_lines)
                else:
                    out.append(f"{pad}else:")
                    out.extend(render_stmts(s.orelse, indent + 1))
        elif isinstance(s, n.WhileStmt):
            out.append(f"{pad}while {render_expr(s.cond)}:")
            out.extend(render_stmts(s.body, indent + 1) or [pad + "    pass"])
        elif isinstance(s, n.ForStmt):
            out.append(f"{pad}for {s.target.id} in {render_expr(s.iter)}:")
            out.extend(render_stmts(s.body, indent + 1) or [pad + "    pass"])
        elif isinstance(s, n.Break):
            out.append(f"{pad}break")
        elif isinstance(s, n.Continue):
            out.append(f"{pad}continue")
        elif isinstance(s, n.Return):
            if s.value is None:
                out.append(f"{pad}return")
            else:
                out.append(f"{pad}return {render_expr(s.value)}")
        elif isinstance(s, n.Pass):
            out.append(f"{pad}pass")
        elif isinstance(s, n.AssertStmt):
            line = f"{pad}assert {render_expr(s.test)}"
            if s.msg is not None:
                line += f", {render_expr(s.msg)}"
            out.append(line)
        elif isinstance(s, n.ExprStmt):
            out.append(f"{pad}{render_expr(s.value)}")
        else:
            raise InternalLoweringError(f"cannot render statement {type(s).__name__}")
    return out


def render_function(fn: n.FunctionAst, keep_annotations: bool = False) -> str:
    params = []
    for p in fn.params:
        if keep_annotations and p.annotation:
            params.append(f"{p.name}: {p.annotation}")
        else:
            params.append(p.name)
    header = f"def {fn.name}({', '.join(params)}):"
    if keep_annotations and fn.returns:
        header = header[:-1] + f" -> {fn.returns}:"
    return "\n".join([header] + render_stmts(fn.body, 1))


def render_program(prog: n.ProgramAst, keep_annotations: bool = False) -> str:
    """Render a whole program: imports, functions, then top-level asserts."""
    chunks = [imp.source for imp in prog.imports]
    for fn in prog.functions:
        if chunks:
            chunks.append("")
        chunks.append(render_function(fn, keep_annotations))
    if prog.top_asserts:
        chunks.append("")
        chunks.extend(render_stmts(list(prog.top_asserts)))
    return "\n".join(chunks) + "\n"
