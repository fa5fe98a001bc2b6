"""End-to-end source-to-source transformation.

transform() composes the three steps: lower strings, build the CFG, emit the
state machine, with top-level asserts rewritten under the same string
encoding. It is a pure function of the source text: identical input yields
byte-identical output, and the output parses and checks under the same
grammar it came from.
"""

from __future__ import annotations

from tlabench.errors import SubsetViolationError
from tlabench.frontend import check_subset, nodes as n, parse_program
from tlabench.transform.cfg import build_cfg
from tlabench.transform.emit import LoweredProgram, emit_state_machine
from tlabench.transform.render import render_stmts
from tlabench.transform.strings import lower_strings


def transform_program(source: str) -> tuple[str, LoweredProgram]:
    prog = parse_program(source)
    violations = check_subset(prog)
    if violations:
        raise SubsetViolationError(violations)

    lowered_prog = lower_strings(prog)
    fn = lowered_prog.function
    cfg = build_cfg(fn)
    machine = emit_state_machine(cfg, fn)

    chunks = []
    for imp in lowered_prog.imports:
        if imp.module == "math":
            chunks.append(imp.source)
    if chunks:
        chunks.append("")
    chunks.append(machine.source)
    if lowered_prog.top_asserts:
        chunks.append("")
        chunks.extend(render_stmts(list(lowered_prog.top_asserts)))
    return "\n".join(chunks) + "\n", machine


def transform(source: str) -> str:
    text, _ = transform_program(source)
    return text
