"""AST node types for the restricted Python subset.

Every node carries a source span. Constructs that are recognised but banned
(comprehensions, lambdas, classes, generators, slices, nested defs) are kept
in the tree as `Forbidden` leaves so the subset checker can report precise
locations instead of failing the parse.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


@dataclass
class Node:
    span: Span


# --- expressions ---------------------------------------------------------


@dataclass
class Expr(Node):
    pass


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class FloatLit(Expr):
    value: float


@dataclass
class BoolLit(Expr):
    value: bool


@dataclass
class StrLit(Expr):
    value: str


@dataclass
class NoneLit(Expr):
    pass


@dataclass
class Name(Expr):
    id: str


@dataclass
class TupleLit(Expr):
    elts: list[Expr]


@dataclass
class ListLit(Expr):
    elts: list[Expr]


@dataclass
class DictLit(Expr):
    keys: list[Expr]
    values: list[Expr]


@dataclass
class SetLit(Expr):
    """Parsed so the type filter can flag it; never survives check_subset."""

    elts: list[Expr]


@dataclass
class Subscript(Expr):
    base: Expr
    index: Expr


@dataclass
class Call(Expr):
    # func is either a bare name ("len") or a dotted "math.sqrt" spelling.
    func: str
    args: list[Expr]


@dataclass
class BinOp(Expr):
    left: Expr
    op: str  # + - * / // % **
    right: Expr


@dataclass
class UnaryOp(Expr):
    op: str  # "-" "+" "not"
    operand: Expr


@dataclass
class BoolOp(Expr):
    op: str  # "and" / "or"
    values: list[Expr]


@dataclass
class Compare(Expr):
    left: Expr
    ops: list[str]  # == != < <= > >= in "not in" is "is not"
    comparators: list[Expr]


@dataclass
class Forbidden(Expr):
    """A parsed-but-banned construct; `feature` is one of FEATURE_NAMES."""

    feature: str
    detail: str = ""


# --- statements ----------------------------------------------------------


@dataclass
class Stmt(Node):
    pass


@dataclass
class Assign(Stmt):
    target: Expr  # Name or Subscript
    value: Expr


@dataclass
class AugAssign(Stmt):
    target: Expr
    op: str
    value: Expr


@dataclass
class IfStmt(Stmt):
    cond: Expr
    body: list[Stmt]
    orelse: list[Stmt]


@dataclass
class WhileStmt(Stmt):
    cond: Expr
    body: list[Stmt]


@dataclass
class ForStmt(Stmt):
    target: Name
    iter: Expr
    body: list[Stmt]


@dataclass
class Break(Stmt):
    pass


@dataclass
class Continue(Stmt):
    pass


@dataclass
class Return(Stmt):
    value: Expr | None


@dataclass
class Pass(Stmt):
    pass


@dataclass
class AssertStmt(Stmt):
    test: Expr
    msg: Expr | None = None


@dataclass
class ExprStmt(Stmt):
    value: Expr


@dataclass
class ForbiddenStmt(Stmt):
    feature: str
    detail: str = ""


# --- top level -----------------------------------------------------------


@dataclass
class Param:
    name: str
    span: Span
    annotation: str | None = None  # dotted source text of the annotation


@dataclass
class FunctionAst(Node):
    name: str
    params: list[Param]
    body: list[Stmt]
    returns: str | None = None


@dataclass
class Import(Node):
    module: str  # top-level module name ("math", "typing", "re", ...)
    source: str  # original statement text, preserved for re-emission


@dataclass
class ProgramAst(Node):
    functions: list[FunctionAst] = field(default_factory=list)
    top_asserts: list[AssertStmt] = field(default_factory=list)
    imports: list[Import] = field(default_factory=list)

    @property
    def function(self) -> FunctionAst:
        """The single function of a checked program."""
        if len(self.functions) != 1:
            raise ValueError(f"expected exactly one function, found {len(self.functions)}")
        return self.functions[0]


def walk(node):
    """Yield `node` and every Node reachable from its fields, preorder."""
    stack = [node]
    while stack:
        cur = stack.pop()
        yield cur
        children = []
        for value in vars(cur).values():
            if isinstance(value, Node):
                children.append(value)
            elif isinstance(value, list):
                children.extend(v for v in value if isinstance(v, Node))
        stack.extend(reversed(children))
