"""TLC config generation.

The layout is fixed: a CONSTANTS block (caller bindings first, then the
reflexive NONE/NULL model values), SPECIFICATION Spec, INVARIANT Assertion,
CHECK_DEADLOCK FALSE. Section keywords are uppercase with one binding per
line; identical inputs produce identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from tlabench.errors import DuplicateConstantError
from tlabench.tla.scan import TlaModuleOutline

_RESERVED = ("NONE", "NULL")


@dataclass(frozen=True)
class ConfigResult:
    text: str
    warnings: tuple[str, ...] = field(default_factory=tuple)


def make_config(
    outline: TlaModuleOutline,
    extra_constants: list[tuple[str, str]] | None = None,
) -> ConfigResult:
    extra_constants = list(extra_constants or [])
    for name, _ in extra_constants:
        if name in _RESERVED:
            raise DuplicateConstantError(f"{name} is bound reflexively and cannot be rebound")

    lines = ["CONSTANTS"]
    for name, value in extra_constants:
        lines.append(f"    {name} = {value}")
    for name in _RESERVED:
        lines.append(f"    {name} = {name}")
    lines.append("")
    lines.append("SPECIFICATION")
    lines.append("    Spec")
    lines.append("")

    warnings: list[str] = []
    if outline.has_assertion:
        lines.append("INVARIANT")
        lines.append("    Assertion")
        lines.append("")
    else:
        warnings.append(
            f"module {outline.module_name} defines no Assertion operator; "
            "INVARIANT section omitted"
        )

    lines.append("CHECK_DEADLOCK FALSE")
    return ConfigResult(text="\n".join(lines) + "\n", warnings=tuple(warnings))
