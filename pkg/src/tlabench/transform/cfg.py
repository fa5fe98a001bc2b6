"""Control-flow graph construction over the restricted AST.

Basic blocks hold straight-line statements only (assignments and asserts;
returns become writes to a reserved result variable). Every non-exit block
leaves through either a single unconditional edge or a {cond, not cond} pair,
in that order. `for` loops are desugared to index-based whiles here so the
state machine only ever dispatches on guarded whiles. Block ids are assigned
in depth-first order from the entry; the exit id is block_count + 1 and never
names a real block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from tlabench.errors import InternalLoweringError
from tlabench.frontend import nodes as n
from tlabench.transform.render import render_expr
from tlabench.transform.strings import FreshNames, collect_identifiers


@dataclass
class BasicBlock:
    id: int
    stmts: list[n.Stmt] = field(default_factory=list)


@dataclass
class Edge:
    src: int
    dst: int
    guard: n.Expr | None = None


@dataclass
class Cfg:
    blocks: dict[int, BasicBlock]
    entry: int
    exit: int
    edges: list[Edge]
    # lowering metadata, not part of the graph itself
    ret_var: str = "__ret__"
    temp_vars: list[str] = field(default_factory=list)

    def out_edges(self, block_id: int) -> list[Edge]:
        return [e for e in self.edges if e.src == block_id]


_SPAN0 = n.Span(0, 0, 0, 0)


def _not(e: n.Expr) -> n.Expr:
    return n.UnaryOp(e.span, "not", e)


@dataclass
class _Loop:
    continue_target: int
    break_target: int


class _Builder:
    def __init__(self, fn: n.FunctionAst):
        self.names = FreshNames(collect_identifiers(fn) | {"pc"})
        self.ret = self._reserve("__ret__")
        self.temps: list[str] = []
        self.blocks: dict[int, list[n.Stmt]] = {}
        self.edges: dict[int, list[tuple[int, n.Expr | None]]] = {}
        self.counter = 0
        self.EXIT = 0  # symbolic until renumbering

    def _reserve(self, base: str) -> str:
        if base not in self.names.reserved:
            self.names.reserved.add(base)
            return base
        for i in range(1, 101):
            candidate = f"{base}_{i}"
            if candidate not in self.names.reserved:
                self.names.reserved.add(candidate)
                return candidate
        raise InternalLoweringError(f"no fresh name for {base!r} after 100 tries")

    def temp(self, base: str) -> str:
        name = self.names.fresh(base)
        self.temps.append(name)
        return name

    def new_block(self) -> int:
        self.counter += 1
        self.blocks[self.counter] = []
        self.edges[self.counter] = []
        return self.counter

    def edge(self, src: int, dst: int, guard: n.Expr | None = None):
        self.edges[src].append((dst, guard))

    def build(self, fn: n.FunctionAst) -> tuple[int, int]:
        entry = self.new_block()
        end = self.stmts(fn.body, entry, [])
        if end is not None:  # control can fall off the end: implicit None
            self.blocks[end].append(
                n.Assign(_SPAN0, n.Name(_SPAN0, self.ret), n.NoneLit(_SPAN0))
            )
            self.edge(end, self.EXIT)
        return entry, self.EXIT

    def stmts(self, body: list[n.Stmt], cur: int | None, loops: list[_Loop]) -> int | None:
        for s in body:
            if cur is None:
                break  # code after return/break/continue never runs
            cur = self.stmt(s, cur, loops)
        return cur

    def stmt(self, s: n.Stmt, cur: int, loops: list[_Loop]) -> int | None:
        if isinstance(s, (n.Assign, n.AugAssign, n.AssertStmt)):
            self.blocks[cur].append(s)
            return cur
        if isinstance(s, n.Pass):
            return cur
        if isinstance(s, n.ExprStmt):
            return cur  # expressions in this subset are pure
        if isinstance(s, n.Return):
            value = s.value if s.value is not None else n.NoneLit(s.span)
            self.blocks[cur].append(n.Assign(s.span, n.Name(s.span, self.ret), value))
            self.edge(cur, self.EXIT)
            return None
        if isinstance(s, n.Break):
            if not loops:
                raise InternalLoweringError("break outside loop reached the transform")
            self.edge(cur, loops[-1].break_target)
            return None
        if isinstance(s, n.Continue):
            if not loops:
                raise InternalLoweringError("continue outside loop reached the transform")
            self.edge(cur, loops[-1].continue_target)
            return None
        if isinstance(s, n.IfStmt):
            return self.if_stmt(s, cur, loops)
        if isinstance(s, n.WhileStmt):
            return self.while_stmt(s, cur, loops)
        if isinstance(s, n.ForStmt):
            return self.for_stmt(s, cur, loops)
        raise InternalLoweringError(f"{type(s).__name__} reached the transform")

    def if_stmt(self, s: n.IfStmt, cur: int, loops) -> int | None:
        then_b = self.new_block()
        else_b = self.new_block() if s.orelse else None
        join: int | None = None

        def get_join():
            nonlocal join
            if join is None:
                join = self.new_block()
            return join

        self.edge(cur, then_b, s.cond)
        if else_b is not None:
            self.edge(cur, else_b, _not(s.cond))
        else:
            self.edge(cur, get_join(), _not(s.cond))
        t_end = self.stmts(s.body, then_b, loops)
        if t_end is not None:
            self.edge(t_end, get_join())
        if else_b is not None:
            e_end = self.stmts(s.orelse, else_b, loops)
            if e_end is not None:
                self.edge(e_end, get_join())
        return join

    def while_stmt(self, s: n.WhileStmt, cur: int, loops) -> int:
        header = self.new_block()
        self.edge(cur, header)
        body_b = self.new_block()
        after = self.new_block()
        self.edge(header, body_b, s.cond)
        self.edge(header, after, _not(s.cond))
        b_end = self.stmts(s.body, body_b, loops + [_Loop(header, after)])
        if b_end is not None:
            self.edge(b_end, header)
        return after

    def for_stmt(self, s: n.ForStmt, cur: int, loops) -> int:
        sp = s.span
        if isinstance(s.iter, n.Call) and s.iter.func == "range":
            return self._for_range(s, cur, loops)
        # for x in seq: index 0..len(seq)-1 with x = seq[i] at the loop head
        seq = n.Name(sp, self.temp("__seq"))
        idx = n.Name(sp, self.temp("__idx"))
        self.blocks[cur].append(n.Assign(sp, seq, s.iter))
        self.blocks[cur].append(n.Assign(sp, idx, n.IntLit(sp, 0)))
        header = self.new_block()
        self.edge(cur, header)
        body_b = self.new_block()
        after = self.new_block()
        incr = self.new_block()
        guard = n.Compare(sp, idx, ["<"], [n.Call(sp, "len", [seq])])
        self.edge(header, body_b, guard)
        self.edge(header, after, _not(guard))
        self.blocks[body_b].append(n.Assign(sp, s.target, n.Subscript(sp, seq, idx)))
        b_end = self.stmts(s.body, body_b, loops + [_Loop(incr, after)])
        if b_end is not None:
            self.edge(b_end, incr)
        self.blocks[incr].append(
            n.Assign(sp, idx, n.BinOp(sp, idx, "+", n.IntLit(sp, 1)))
        )
        self.edge(incr, header)
        return after

    def _for_range(self, s: n.ForStmt, cur: int, loops) -> int:
        sp = s.span
        args = s.iter.args
        if not 1 <= len(args) <= 3:
            raise InternalLoweringError("range() takes 1 to 3 arguments")
        start = args[0] if len(args) >= 2 else n.IntLit(sp, 0)
        stop = args[1] if len(args) >= 2 else args[0]
        step = args[2] if len(args) == 3 else n.IntLit(sp, 1)

        it = n.Name(sp, self.temp("__it"))
        self.blocks[cur].append(n.Assign(sp, it, start))
        en = n.Name(sp, self.temp("__end"))
        self.blocks[cur].append(n.Assign(sp, en, stop))
        sign = _static_sign(step)
        if sign == 0:
            st = n.Name(sp, self.temp("__step"))
            self.blocks[cur].append(n.Assign(sp, st, step))
            step_expr: n.Expr = st
            guard = n.BoolOp(sp, "or", [
                n.BoolOp(sp, "and", [
                    n.Compare(sp, st, [">"], [n.IntLit(sp, 0)]),
                    n.Compare(sp, it, ["<"], [en]),
                ]),
                n.BoolOp(sp, "and", [
                    n.Compare(sp, st, ["<"], [n.IntLit(sp, 0)]),
                    n.Compare(sp, it, [">"], [en]),
                ]),
            ])
        else:
            step_expr = step
            op = "<" if sign > 0 else ">"
            guard = n.Compare(sp, it, [op], [en])

        header = self.new_block()
        self.edge(cur, header)
        body_b = self.new_block()
        after = self.new_block()
        incr = self.new_block()
        self.edge(header, body_b, guard)
        self.edge(header, after, _not(guard))
        self.blocks[body_b].append(n.Assign(sp, s.target, it))
        b_end = self.stmts(s.body, body_b, loops + [_Loop(incr, after)])
        if b_end is not None:
            self.edge(b_end, incr)
        self.blocks[incr].append(n.Assign(sp, it, n.BinOp(sp, it, "+", step_expr)))
        self.edge(incr, header)
        return after


def _static_sign(e: n.Expr) -> int:
    """+1/-1 when the step's sign is known statically, else 0."""
    if isinstance(e, n.IntLit):
        return 1 if e.value > 0 else (-1 if e.value < 0 else 0)
    if isinstance(e, n.UnaryOp) and e.op == "-" and isinstance(e.operand, n.IntLit):
        return -1 if e.operand.value > 0 else (1 if e.operand.value < 0 else 0)
    return 0


def build_cfg(fn: n.FunctionAst) -> Cfg:
    b = _Builder(fn)
    entry, _ = b.build(fn)

    blocks, edges, entry = _simplify(b.blocks, b.edges, entry)
    order = _dfs_order(blocks, edges, entry)
    renumber = {old: i + 1 for i, old in enumerate(order)}
    exit_id = len(order) + 1
    renumber[0] = exit_id  # symbolic exit

    out_blocks = {
        renumber[old]: BasicBlock(renumber[old], blocks[old]) for old in order
    }
    out_edges = [
        Edge(renumber[src], renumber[dst], guard)
        for src in order
        for dst, guard in edges[src]
    ]
    out_edges.sort(key=lambda e: e.src)
    return Cfg(
        blocks=out_blocks,
        entry=renumber[entry],
        exit=exit_id,
        edges=out_edges,
        ret_var=b.ret,
        temp_vars=b.temps,
    )


def _simplify(blocks, edges, entry):
    # Drop blocks unreachable from entry, then splice out empty pass-through
    # blocks (straight-line collapse), then prune again.
    def reachable():
        seen = {entry}
        stack = [entry]
        while stack:
            cur = stack.pop()
            for dst, _ in edges.get(cur, []):
                if dst != 0 and dst not in seen:
                    seen.add(dst)
                    stack.append(dst)
        return seen

    changed = True
    while changed:
        changed = False
        live = reachable()
        for bid in list(blocks):
            if bid not in live:
                del blocks[bid]
                del edges[bid]
                changed = True
        for bid in list(blocks):
            outs = edges[bid]
            if blocks[bid] or len(outs) != 1 or outs[0][1] is not None:
                continue
            dst = outs[0][0]
            if dst == bid:
                continue  # empty self-loop: keep, it is the whole loop
            for src in blocks:
                edges[src] = [
                    (dst if d == bid else d, g) for d, g in edges[src]
                ]
            if entry == bid:
                entry = dst
            del blocks[bid]
            del edges[bid]
            changed = True
            break
    return blocks, edges, entry


def _dfs_order(blocks, edges, entry):
    order: list[int] = []
    seen = set()
    stack = [entry]
    while stack:
        cur = stack.pop()
        if cur in seen or cur == 0:
            continue
        seen.add(cur)
        order.append(cur)
        succs = [dst for dst, _ in edges.get(cur, []) if dst != 0]
        stack.extend(reversed(succs))
    return order


def validate_cfg(cfg: Cfg) -> list[str]:
    """Well-formedness findings; empty means the graph honours its contract."""
    problems = []
    ids = sorted(cfg.blocks)
    if ids != list(range(1, len(ids) + 1)):
        problems.append(f"block ids not consecutive from 1: {ids}")
    if cfg.exit != len(ids) + 1:
        problems.append(f"exit id {cfg.exit} != block_count + 1")
    if cfg.entry not in cfg.blocks:
        problems.append(f"entry {cfg.entry} is not a block")

    seen = {cfg.entry}
    stack = [cfg.entry]
    while stack:
        cur = stack.pop()
        for e in cfg.out_edges(cur):
            if e.dst != cfg.exit and e.dst not in seen:
                seen.add(e.dst)
                stack.append(e.dst)
    unreachable = set(cfg.blocks) - seen
    if unreachable:
        problems.append(f"unreachable blocks: {sorted(unreachable)}")

    for bid in ids:
        outs = cfg.out_edges(bid)
        if len(outs) == 1:
            if outs[0].guard is not None:
                problems.append(f"block {bid}: single edge must be unconditional")
        elif len(outs) == 2:
            pos, neg = outs
            ok = (
                pos.guard is not None
                and isinstance(neg.guard, n.UnaryOp)
                and neg.guard.op == "not"
                and render_expr(neg.guard.operand) == render_expr(pos.guard)
            )
            if not ok:
                problems.append(f"block {bid}: edge pair is not {{cond, not cond}}")
        else:
            problems.append(f"block {bid}: {len(outs)} outgoing edges")
        for s in cfg.blocks[bid].stmts:
            if not isinstance(s, (n.Assign, n.AugAssign, n.AssertStmt)):
                problems.append(f"block {bid}: control statement {type(s).__name__} inside block")
    return problems
