"""One-stop spec check: post-process, generate config, run the checker.

This is the path the repair loop takes for every candidate spec. Scan
failures never reach the external checker; they come back as ParseError
verdicts with the scanner's message as the error text.
"""

from __future__ import annotations

import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from tlabench.errors import NoModuleHeaderError, UnbalancedDefinitionError
from tlabench.harness.tlc import RunLimits, TlcResult, Verdict, run_tlc
from tlabench.tla import make_config, postprocess, scan_module


@dataclass
class SpecCheck:
    result: TlcResult
    postprocessed: str | None = None
    config_text: str | None = None
    module_name: str | None = None
    warnings: tuple[str, ...] = field(default_factory=tuple)


def check_spec(
    spec_text: str,
    limits: RunLimits = RunLimits(),
    checker_cmd: str | None = None,
    constants: list[tuple[str, str]] | None = None,
    default_constant_value: str = "3",
    workdir_root: str | Path | None = None,
) -> SpecCheck:
    """Post-process `spec_text`, bind its constants, and run the checker.

    Constants the module declares beyond NONE/NULL get bound from
    `constants` when given, else to `default_constant_value` so bounded
    exploration always has a model.
    """
    try:
        fixed = postprocess(spec_text)
        outline = scan_module(fixed)
    except (NoModuleHeaderError, UnbalancedDefinitionError) as exc:
        result = TlcResult(Verdict.ParseError, -1, "", f"{type(exc).__name__}: {exc}", 0.0)
        return SpecCheck(result=result)

    supplied = dict(constants or [])
    bindings = []
    for name in outline.constants:
        if name in ("NONE", "NULL"):
            continue
        bindings.append((name, supplied.get(name, default_constant_value)))
    config = make_config(outline, bindings)

    with tempfile.TemporaryDirectory(prefix="tlabench-spec-") as scratch:
        spec_path = Path(scratch) / f"{outline.module_name}.tla"
        spec_path.write_text(fixed, encoding="utf-8")
        cfg_path = Path(scratch) / f"{outline.module_name}.cfg"
        cfg_path.write_text(config.text, encoding="utf-8")
        result = run_tlc(spec_path, cfg_path, limits, checker_cmd, workdir_root)

    return SpecCheck(
        result=result,
        postprocessed=fixed,
        config_text=config.text,
        module_name=outline.module_name,
        warnings=config.warnings,
    )
