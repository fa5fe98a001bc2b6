from tlabench.transform.cfg import BasicBlock, Cfg, Edge, build_cfg, validate_cfg
from tlabench.transform.strings import lower_strings
from tlabench.transform.emit import LoweredProgram, emit_state_machine
from tlabench.transform.render import render_expr, render_program, render_stmts
from tlabench.transform.pipeline import transform, transform_program

__all__ = [
    "BasicBlock", "Cfg", "Edge", "LoweredProgram",
    "build_cfg", "emit_state_machine", "lower_strings",
    "render_expr", "render_program", "render_stmts",
    "transform", "transform_program", "validate_cfg",
]
