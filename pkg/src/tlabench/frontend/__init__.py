from tlabench.frontend.nodes import (
    AssertStmt,
    Assign,
    AugAssign,
    BinOp,
    BoolLit,
    BoolOp,
    Break,
    Call,
    Compare,
    Continue,
    DictLit,
    ExprStmt,
    FloatLit,
    Forbidden,
    ForbiddenStmt,
    ForStmt,
    FunctionAst,
    IfStmt,
    Import,
    IntLit,
    ListLit,
    Name,
    NoneLit,
    Param,
    Pass,
    ProgramAst,
    Return,
    SetLit,
    Span,
    StrLit,
    Subscript,
    TupleLit,
    UnaryOp,
    WhileStmt,
    walk,
)
from tlabench.frontend.parse import ALLOWED_CALLS, parse_program
from tlabench.frontend.subset import (
    ALLOWED_IMPORTS,
    FEATURE_NAMES,
    Violation,
    ViolationKind,
    check_subset,
)
from tlabench.frontend.complexity import ComplexityReport, assigned_names, complexity_metrics

__all__ = [
    "ALLOWED_CALLS", "ALLOWED_IMPORTS", "AssertStmt", "Assign", "AugAssign",
    "BinOp", "BoolLit", "BoolOp", "Break", "Call", "Compare",
    "ComplexityReport", "Continue", "DictLit", "ExprStmt", "FEATURE_NAMES",
    "FloatLit", "ForStmt", "Forbidden", "ForbiddenStmt", "FunctionAst",
    "IfStmt", "Import", "IntLit", "ListLit", "Name", "NoneLit", "Param",
    "Pass", "ProgramAst", "Return", "SetLit", "Span", "StrLit", "Subscript",
    "TupleLit", "UnaryOp", "Violation", "ViolationKind", "WhileStmt",
    "assigned_names", "check_subset", "complexity_metrics", "parse_program",
    "walk",
]
