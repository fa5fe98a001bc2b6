"""Emit the state-machine form of a function from its control-flow graph.

The emitted function keeps the original name and signature. Its body declares
every assigned variable up front (initialised to None), sets a program
counter to the entry block id, and dispatches on the counter inside a single
while loop, one arm per block. Each arm runs the block's statements and then
assigns the counter according to the block's outgoing guards. The function
returns the reserved result variable once the counter reaches the exit id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from tlabench.errors import InternalLoweringError, NameCollisionError
from tlabench.frontend import nodes as n
from tlabench.transform.cfg import Cfg
from tlabench.transform.render import render_expr, render_stmts
from tlabench.transform.strings import collect_identifiers


@dataclass
class LoweredProgram:
    source: str
    pc_var: str
    var_decls: list[tuple[str, str]] = field(default_factory=list)
    block_count: int = 0


def _pick_fresh(base: str, used: set[str]) -> str:
    if base not in used:
        return base
    for i in range(1, 101):
        candidate = f"{base}_{i}"
        if candidate not in used:
            return candidate
    raise NameCollisionError(f"no fresh name for {base!r} after 100 tries")


def _assigned_in_blocks(cfg: Cfg, params: set[str]) -> list[str]:
    seen: list[str] = []
    for bid in sorted(cfg.blocks):
        for s in cfg.blocks[bid].stmts:
            if isinstance(s, (n.Assign, n.AugAssign)) and isinstance(s.target, n.Name):
                name = s.target.id
                if name not in params and name not in seen:
                    seen.append(name)
    return seen


def emit_state_machine(cfg: Cfg, fn: n.FunctionAst) -> LoweredProgram:
    used = collect_identifiers(fn) | set(cfg.temp_vars) | {cfg.ret_var}
    pc = _pick_fresh("pc", used)

    params = {p.name for p in fn.params}
    decls = _assigned_in_blocks(cfg, params)
    if cfg.ret_var not in decls:
        decls.append(cfg.ret_var)

    lines = [f"def {fn.name}({', '.join(p.name for p in fn.params)}):"]
    for name in decls:
        lines.append(f"    {name} = None")
    lines.append(f"    {pc} = {cfg.entry}")
    lines.append(f"    while {pc} != {cfg.exit}:")
    for i, bid in enumerate(sorted(cfg.blocks)):
        keyword = "if" if i == 0 else "elif"
        lines.append(f"        {keyword} {pc} == {bid}:")
        body_lines = render_stmts(cfg.blocks[bid].stmts, 3)
        lines.extend(body_lines)
        lines.extend(_dispatch(cfg, bid, pc))
    lines.append(f"    return {cfg.ret_var}")

    return LoweredProgram(
        source="\n".join(lines),
        pc_var=pc,
        var_decls=[(name, "None") for name in decls],
        block_count=len(cfg.blocks),
    )


def _dispatch(cfg: Cfg, bid: int, pc: str) -> list[str]:
    outs = cfg.out_edges(bid)
    if len(outs) == 1:
        return [f"            {pc} = {outs[0].dst}"]
    if len(outs) == 2:
        pos, neg = outs
        return [
            f"            if {render_expr(pos.guard)}:",
            f"                {pc} = {pos.dst}",
            "            else:",
            f"                {pc} = {neg.dst}",
        ]
    raise InternalLoweringError(f"block {bid} has {len(outs)} outgoing edges")
