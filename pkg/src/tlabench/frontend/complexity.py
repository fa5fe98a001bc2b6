"""Static complexity metrics over a checked function.

Counting convention:
  cyclomatic     = 1 + decision points, where a decision point is an if/elif
                   arm, a while, a for, each and/or operator, and each extra
                   link of a chained comparison.
  max_loop_depth = deepest static nesting of while/for.
  variable_count = distinct assigned names plus parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

from tlabench.frontend import nodes as n


@dataclass(frozen=True)
class ComplexityReport:
    cyclomatic: int
    max_loop_depth: int
    variable_count: int


def complexity_metrics(fn: n.FunctionAst) -> ComplexityReport:
    decisions = sum(_expr_decisions(node) for stmt in fn.body for node in n.walk(stmt))
    return ComplexityReport(
        cyclomatic=1 + decisions,
        max_loop_depth=_depth(fn.body),
        variable_count=len(assigned_names(fn)) + len(fn.params),
    )


def _expr_decisions(node) -> int:
    if isinstance(node, (n.IfStmt, n.WhileStmt, n.ForStmt)):
        return 1
    if isinstance(node, n.BoolOp):
        return len(node.values) - 1
    if isinstance(node, n.Compare):
        return len(node.ops) - 1
    return 0


def _depth(body: list[n.Stmt]) -> int:
    deepest = 0
    for stmt in body:
        if isinstance(stmt, (n.WhileStmt, n.ForStmt)):
            deepest = max(deepest, 1 + _depth(stmt.body))
        elif isinstance(stmt, n.IfStmt):
            deepest = max(deepest, _depth(stmt.body), _depth(stmt.orelse))
    return deepest


def assigned_names(fn: n.FunctionAst) -> list[str]:
    """Names assigned in the body (not via subscript), in first-write order."""
    param_names = {p.name for p in fn.params}
    seen: list[str] = []

    def visit(stmts):
        for stmt in stmts:
            if isinstance(stmt, (n.Assign, n.AugAssign)) and isinstance(stmt.target, n.Name):
                name = stmt.target.id
                if name not in param_names and name not in seen:
                    seen.append(name)
            elif isinstance(stmt, n.ForStmt):
                if stmt.target.id not in param_names and stmt.target.id not in seen:
                    seen.append(stmt.target.id)
                visit(stmt.body)
            elif isinstance(stmt, n.IfStmt):
                visit(stmt.body)
                visit(stmt.orelse)
            elif isinstance(stmt, n.WhileStmt):
                visit(stmt.body)

    visit(fn.body)
    return seen
