"""Lower string values to integer code-point tuples.

Encoding: a string value is a tuple of code points, so "ab" becomes (97, 98)
and "" becomes (). Tuples are immutable and hashable like strings, compare
lexicographically, concatenate with +, and repeat with *, which keeps every
string operation the subset admits observationally equivalent.

Indexing is the one mismatch: Python gives a length-1 string back, the
encoding gives a bare code point. Expressions that index a string-typed value
are therefore wrapped into a one-tuple, and ord()/chr() collapse to tuple
element access / construction. Knowing which values are strings takes a small
flow analysis seeded from annotations and the literal arguments of the
top-level asserts.
"""

from __future__ import annotations

from dataclasses import dataclass

from tlabench.errors import InternalLoweringError
from tlabench.frontend import nodes as n

# --- abstract types ------------------------------------------------------

_INT = "int"
_FLOAT = "float"
_BOOL = "bool"
_STR = "str"
_NONE = "none"
_SEQ = "seq"
_MAP = "map"
_TOP = "unknown"


@dataclass(frozen=True)
class Ty:
    kind: str
    elem: "Ty | None" = None

    def is_str(self):
        return self.kind == _STR


T_INT = Ty(_INT)
T_FLOAT = Ty(_FLOAT)
T_BOOL = Ty(_BOOL)
T_STR = Ty(_STR)
T_NONE = Ty(_NONE)
T_TOP = Ty(_TOP)


def t_seq(elem: Ty) -> Ty:
    return Ty(_SEQ, elem)


def t_map(elem: Ty) -> Ty:
    return Ty(_MAP, elem)


def join(a: Ty, b: Ty) -> Ty:
    if a == b:
        return a
    if a.kind == _TOP or b.kind == _TOP:
        # max depth reached? keep unknown
        return T_TOP
    numeric = {_INT, _FLOAT, _BOOL}
    if a.kind in numeric and b.kind in numeric:
        return T_FLOAT if _FLOAT in (a.kind, b.kind) else T_INT
    if a.kind == b.kind and a.kind in (_SEQ, _MAP):
        return Ty(a.kind, join(a.elem or T_TOP, b.elem or T_TOP))
    if _NONE in (a.kind, b.kind):
        other = a if b.kind == _NONE else b
        return other  # Optional[T]: the T is what drives lowering
    return T_TOP


_ANNOT_TY = {
    "int": T_INT, "float": T_FLOAT, "bool": T_BOOL, "str": T_STR, "None": T_NONE,
}


def _annotation_ty(text: str | None) -> Ty:
    if not text:
        return T_TOP
    text = text.replace("typing.", "").strip()
    if text in _ANNOT_TY:
        return _ANNOT_TY[text]
    for head in ("List", "Iterable", "Tuple", "list", "tuple"):
        if text.startswith(head + "["):
            inner = text[len(head) + 1:-1]
            # Tuple[int, int] and friends: join the member types
            parts = [p.strip() for p in inner.split(",") if p.strip() and p.strip() != "..."]
            elem = T_TOP
            if parts:
                elem = _annotation_ty(parts[0])
                for p in parts[1:]:
                    elem = join(elem, _annotation_ty(p))
            return t_seq(elem)
    for head in ("Dict", "dict"):
        if text.startswith(head + "["):
            inner = text[len(head) + 1:-1]
            parts = [p.strip() for p in inner.split(",")]
            return t_map(_annotation_ty(parts[-1]) if parts else T_TOP)
    if text.startswith("Optional["):
        return _annotation_ty(text[len("Optional["):-1])
    return T_TOP


def _literal_ty(e: n.Expr) -> Ty:
    if isinstance(e, n.BoolLit):
        return T_BOOL
    if isinstance(e, n.IntLit):
        return T_INT
    if isinstance(e, n.FloatLit):
        return T_FLOAT
    if isinstance(e, n.StrLit):
        return T_STR
    if isinstance(e, n.NoneLit):
        return T_NONE
    if isinstance(e, (n.ListLit, n.TupleLit)):
        elem = T_TOP
        if e.elts:
            elem = _literal_ty(e.elts[0])
            for x in e.elts[1:]:
                elem = join(elem, _literal_ty(x))
        return t_seq(elem)
    if isinstance(e, n.DictLit):
        elem = T_TOP
        if e.values:
            elem = _literal_ty(e.values[0])
            for x in e.values[1:]:
                elem = join(elem, _literal_ty(x))
        return t_map(elem)
    if isinstance(e, n.UnaryOp) and e.op == "-":
        return _literal_ty(e.operand)
    return T_TOP


class _TypeEnv:
    """Per-function flow analysis, iterated to a fixpoint."""

    def __init__(self, fn: n.FunctionAst, arg_tys: list[Ty]):
        self.env: dict[str, Ty] = {}
        for p, ty in zip(fn.params, arg_tys):
            self.env[p.name] = ty
        self.return_ty = T_TOP
        changed = True
        passes = 0
        while changed and passes < 10:
            before = dict(self.env), self.return_ty
            self._visit(fn.body)
            changed = (dict(self.env), self.return_ty) != before
            passes += 1

    def _bind(self, name: str, ty: Ty):
        old = self.env.get(name)
        self.env[name] = ty if old is None else join(old, ty)

    def _visit(self, stmts):
        for s in stmts:
            if isinstance(s, n.Assign):
                if isinstance(s.target, n.Name):
                    self._bind(s.target.id, self.ty(s.value))
                elif isinstance(s.target, n.Subscript) and isinstance(s.target.base, n.Name):
                    base = self.env.get(s.target.base.id)
                    if base is not None and base.kind in (_SEQ, _MAP):
                        self.env[s.target.base.id] = Ty(
                            base.kind, join(base.elem or T_TOP, self.ty(s.value))
                        )
            elif isinstance(s, n.AugAssign):
                if isinstance(s.target, n.Name):
                    self._bind(s.target.id, self.ty(n.BinOp(s.span, s.target, s.op, s.value)))
            elif isinstance(s, n.IfStmt):
                self._visit(s.body)
                self._visit(s.orelse)
            elif isinstance(s, n.WhileStmt):
                self._visit(s.body)
            elif isinstance(s, n.ForStmt):
                it = self.ty(s.iter)
                if it.is_str():
                    self._bind(s.target.id, T_STR)
                elif it.kind == _SEQ:
                    self._bind(s.target.id, it.elem or T_TOP)
                else:
                    # dict iteration yields keys, whose type is untracked
                    self._bind(s.target.id, T_TOP)
                self._visit(s.body)
            elif isinstance(s, n.Return) and s.value is not None:
                self.return_ty = join(self.return_ty, self.ty(s.value))

    def ty(self, e: n.Expr) -> Ty:
        if isinstance(e, (n.IntLit, n.FloatLit, n.BoolLit, n.StrLit, n.NoneLit,
                          n.ListLit, n.TupleLit, n.DictLit)):
            lit = _literal_ty(e)
            if isinstance(e, (n.ListLit, n.TupleLit)) and e.elts:
                elem = self.ty(e.elts[0])
                for x in e.elts[1:]:
                    elem = join(elem, self.ty(x))
                return t_seq(elem)
            if isinstance(e, n.DictLit) and e.values:
                elem = self.ty(e.values[0])
                for x in e.values[1:]:
                    elem = join(elem, self.ty(x))
                return t_map(elem)
            return lit
        if isinstance(e, n.Name):
            return self.env.get(e.id, T_TOP)
        if isinstance(e, n.Subscript):
            base = self.ty(e.base)
            if base.is_str():
                return T_STR  # a length-1 string
            if base.kind in (_SEQ, _MAP):
                return base.elem or T_TOP
            return T_TOP
        if isinstance(e, n.BinOp):
            lt, rt = self.ty(e.left), self.ty(e.right)
            if e.op == "+":
                if lt.is_str() or rt.is_str():
                    return T_STR
                if lt.kind == _SEQ or rt.kind == _SEQ:
                    return join(lt, rt)
                return join(lt, rt)
            if e.op == "*":
                if lt.is_str() or rt.is_str():
                    return T_STR
                if lt.kind == _SEQ:
                    return lt
                if rt.kind == _SEQ:
                    return rt
                return join(lt, rt)
            if e.op == "/":
                return T_FLOAT
            return join(lt, rt)
        if isinstance(e, n.UnaryOp):
            if e.op == "not":
                return T_BOOL
            return self.ty(e.operand)
        if isinstance(e, n.BoolOp):
            out = self.ty(e.values[0])
            for v in e.values[1:]:
                out = join(out, self.ty(v))
            return out
        if isinstance(e, n.Compare):
            return T_BOOL
        if isinstance(e, n.Call):
            return self._call_ty(e)
        return T_TOP

    def _call_ty(self, e: n.Call) -> Ty:
        f = e.func
        if f in ("len", "ord", "int"):
            return T_INT
        if f == "chr":
            return T_STR
        if f == "range":
            return t_seq(T_INT)
        if f == "abs":
            return self.ty(e.args[0]) if e.args else T_INT
        if f in ("min", "max"):
            if len(e.args) == 1:
                inner = self.ty(e.args[0])
                return inner.elem or T_TOP if inner.kind in (_SEQ,) else T_TOP
            out = self.ty(e.args[0]) if e.args else T_TOP
            for a in e.args[1:]:
                out = join(out, self.ty(a))
            return out
        if f == "sum":
            return T_INT
        if f.startswith("math."):
            return T_FLOAT if f not in ("math.floor", "math.ceil", "math.gcd", "math.factorial") else T_INT
        return T_TOP  # call to the program's own function: resolved by caller


# --- lowering ------------------------------------------------------------


class FreshNames:
    """Generates identifiers absent from a reserved set."""

    def __init__(self, reserved):
        self.reserved = set(reserved)
        self.counters: dict[str, int] = {}

    def fresh(self, base: str) -> str:
        i = self.counters.get(base, 0)
        while True:
            candidate = f"{base}{i}"
            i += 1
            if candidate not in self.reserved:
                self.counters[base] = i
                self.reserved.add(candidate)
                return candidate


def collect_identifiers(prog_or_fn) -> set[str]:
    names = set()
    roots = []
    if isinstance(prog_or_fn, n.ProgramAst):
        for fn in prog_or_fn.functions:
            names.add(fn.name)
            names.update(p.name for p in fn.params)
            roots.extend(fn.body)
        roots.extend(prog_or_fn.top_asserts)
    else:
        names.add(prog_or_fn.name)
        names.update(p.name for p in prog_or_fn.params)
        roots.extend(prog_or_fn.body)
    for root in roots:
        for node in n.walk(root):
            if isinstance(node, n.Name):
                names.add(node.id)
            elif isinstance(node, n.Call):
                names.add(node.func.split(".")[0])
    return names


def _codepoints(span, text: str) -> n.TupleLit:
    return n.TupleLit(span, [n.IntLit(span, ord(c)) for c in text])


def _char_tuple(span, inner: n.Expr) -> n.TupleLit:
    return n.TupleLit(span, [inner])


def _unwrap_char(e: n.Expr) -> n.Expr:
    """code point of a lowered length-1 string expression."""
    if isinstance(e, n.TupleLit) and len(e.elts) == 1:
        return e.elts[0]
    return n.Subscript(e.span, e, n.IntLit(e.span, 0))


def infer_param_types(prog: n.ProgramAst, fn: n.FunctionAst) -> list[Ty]:
    """Parameter types from annotations, refined by assert-call literals."""
    tys = [_annotation_ty(p.annotation) for p in fn.params]
    for stmt in prog.top_asserts:
        for node in n.walk(stmt):
            if isinstance(node, n.Call) and node.func == fn.name:
                for i, arg in enumerate(node.args[: len(tys)]):
                    seen = _literal_ty(arg)
                    if tys[i] == T_TOP:
                        tys[i] = seen
                    elif seen != T_TOP:
                        tys[i] = join(tys[i], seen)
    return tys


class _Lowerer:
    def __init__(self, types: _TypeEnv | None, names: FreshNames):
        self.types = types
        self.names = names

    def ty(self, e: n.Expr) -> Ty:
        if self.types is None:
            return _literal_ty(e)
        return self.types.ty(e)

    # statements return replacement lists so desugaring can splice
    def stmts(self, stmts: list[n.Stmt]) -> list[n.Stmt]:
        out: list[n.Stmt] = []
        for s in stmts:
            out.extend(self.stmt(s))
        return out

    def stmt(self, s: n.Stmt) -> list[n.Stmt]:
        if isinstance(s, n.Assign):
            return [n.Assign(s.span, self.expr(s.target), self.expr(s.value))]
        if isinstance(s, n.AugAssign):
            return [n.AugAssign(s.span, self.expr(s.target), s.op, self.expr(s.value))]
        if isinstance(s, n.IfStmt):
            return [n.IfStmt(s.span, self.expr(s.cond), self.stmts(s.body), self.stmts(s.orelse))]
        if isinstance(s, n.WhileStmt):
            return [n.WhileStmt(s.span, self.expr(s.cond), self.stmts(s.body))]
        if isinstance(s, n.ForStmt):
            return self._lower_for(s)
        if isinstance(s, n.Return):
            return [n.Return(s.span, self.expr(s.value) if s.value else None)]
        if isinstance(s, n.AssertStmt):
            return [n.AssertStmt(s.span, self.expr(s.test), self.expr(s.msg) if s.msg else None)]
        if isinstance(s, n.ExprStmt):
            return [n.ExprStmt(s.span, self.expr(s.value))]
        return [s]  # break/continue/pass

    def _lower_for(self, s: n.ForStmt) -> list[n.Stmt]:
        if not self.ty(s.iter).is_str():
            return [n.ForStmt(s.span, s.target, self.expr(s.iter), self.stmts(s.body))]
        # Iterating a string: walk an index over the code points and rebuild
        # each element as a length-1 tuple so the body still sees a "char".
        sp = s.span
        pre: list[n.Stmt] = []
        seq = self.expr(s.iter)
        if not isinstance(seq, n.Name):
            tmp = n.Name(sp, self.names.fresh("__str"))
            pre.append(n.Assign(sp, tmp, seq))
            seq = tmp
        idx = n.Name(sp, self.names.fresh("__chr"))
        head = n.Assign(sp, s.target, _char_tuple(sp, n.Subscript(sp, seq, idx)))
        loop = n.ForStmt(
            sp, idx,
            n.Call(sp, "range", [n.Call(sp, "len", [seq])]),
            [head] + self.stmts(s.body),
        )
        return pre + [loop]

    def expr(self, e: n.Expr) -> n.Expr:
        if isinstance(e, n.StrLit):
            return _codepoints(e.span, e.value)
        if isinstance(e, n.Subscript):
            base_ty = self.ty(e.base)
            lowered = n.Subscript(e.span, self.expr(e.base), self.expr(e.index))
            if base_ty.is_str():
                return _char_tuple(e.span, lowered)
            return lowered
        if isinstance(e, n.Call):
            return self._lower_call(e)
        if isinstance(e, n.Compare):
            return self._lower_compare(e)
        if isinstance(e, n.BinOp):
            return n.BinOp(e.span, self.expr(e.left), e.op, self.expr(e.right))
        if isinstance(e, n.UnaryOp):
            return n.UnaryOp(e.span, e.op, self.expr(e.operand))
        if isinstance(e, n.BoolOp):
            return n.BoolOp(e.span, e.op, [self.expr(v) for v in e.values])
        if isinstance(e, n.TupleLit):
            return n.TupleLit(e.span, [self.expr(x) for x in e.elts])
        if isinstance(e, n.ListLit):
            return n.ListLit(e.span, [self.expr(x) for x in e.elts])
        if isinstance(e, n.DictLit):
            return n.DictLit(e.span, [self.expr(k) for k in e.keys], [self.expr(v) for v in e.values])
        return e  # literals, names

    def _lower_call(self, e: n.Call) -> n.Expr:
        if e.func == "ord":
            if len(e.args) != 1:
                raise InternalLoweringError("ord() takes one argument")
            return _unwrap_char(self.expr(e.args[0]))
        if e.func == "chr":
            if len(e.args) != 1:
                raise InternalLoweringError("chr() takes one argument")
            return _char_tuple(e.span, self.expr(e.args[0]))
        return n.Call(e.span, e.func, [self.expr(a) for a in e.args])

    def _lower_compare(self, e: n.Compare) -> n.Expr:
        membership = [op for op in e.ops if op in ("in", "not in")]
        if membership and len(e.ops) == 1:
            rhs_ty = self.ty(e.comparators[0])
            if rhs_ty.is_str():
                lhs = e.left
                if isinstance(lhs, n.StrLit):
                    if len(lhs.value) != 1:
                        raise InternalLoweringError(
                            "substring membership cannot be lowered to the code-point encoding"
                        )
                    low_left = n.IntLit(lhs.span, ord(lhs.value))
                elif self.ty(lhs).is_str():
                    low_left = _unwrap_char(self.expr(lhs))
                else:
                    low_left = self.expr(lhs)
                return n.Compare(e.span, low_left, e.ops, [self.expr(e.comparators[0])])
        return n.Compare(
            e.span, self.expr(e.left), list(e.ops), [self.expr(c) for c in e.comparators]
        )


def lower_strings(prog: n.ProgramAst) -> n.ProgramAst:
    """Rewrite every string into its code-point tuple form, program-wide."""
    names = FreshNames(collect_identifiers(prog))
    out = n.ProgramAst(prog.span, [], [], list(prog.imports))
    fn_return: dict[str, Ty] = {}
    for fn in prog.functions:
        env = _TypeEnv(fn, infer_param_types(prog, fn))
        fn_return[fn.name] = env.return_ty
        lower = _Lowerer(env, names)
        out.functions.append(
            n.FunctionAst(fn.span, fn.name, list(fn.params), lower.stmts(fn.body), fn.returns)
        )
    assert_lower = _Lowerer(None, names)
    out.top_asserts = [assert_lower.stmts([a])[0] for a in prog.top_asserts]
    return out
