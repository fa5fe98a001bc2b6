"""Run benchmark programs under the system interpreter and classify the outcome."""

from __future__ import annotations

import enum
import os
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from tlabench.errors import ToolMissingError


class PyOutcomeKind(enum.Enum):
    AllPass = "AllPass"
    AssertFailed = "AssertFailed"
    Crashed = "Crashed"
    Timeout = "Timeout"


@dataclass(frozen=True)
class PyOutcome:
    kind: PyOutcomeKind
    detail: str = ""
    duration: float = 0.0

    @property
    def ok(self) -> bool:
        return self.kind is PyOutcomeKind.AllPass


def resolve_python_cmd(explicit: str | None = None) -> str:
    if explicit:
        return explicit
    return os.environ.get("PYTHON_CMD", sys.executable)


def run_python_tests(
    source: str,
    timeout: float = 30.0,
    python_cmd: str | None = None,
) -> PyOutcome:
    """Execute `source` in an isolated scratch directory; -I blocks user site
    and environment injection. Network isolation is the sandbox's job."""
    cmd = resolve_python_cmd(python_cmd)
    started = time.monotonic()
    with tempfile.TemporaryDirectory(prefix="tlabench-py-") as scratch:
        prog = Path(scratch) / "prog.py"
        prog.write_text(source, encoding="utf-8")
        try:
            proc = subprocess.run(
                [cmd, "-I", prog.name],
                cwd=scratch,
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except subprocess.TimeoutExpired:
            return PyOutcome(PyOutcomeKind.Timeout, f"killed after {timeout}s",
                             time.monotonic() - started)
        except (FileNotFoundError, PermissionError) as exc:
            raise ToolMissingError(f"cannot start interpreter {cmd!r}: {exc}") from None
    duration = time.monotonic() - started
    if proc.returncode == 0:
        return PyOutcome(PyOutcomeKind.AllPass, "", duration)
    tail = [ln for ln in proc.stderr.strip().splitlines() if ln.strip()]
    detail = tail[-1] if tail else f"exit code {proc.returncode}"
    if "AssertionError" in proc.stderr:
        return PyOutcome(PyOutcomeKind.AssertFailed, detail, duration)
    return PyOutcome(PyOutcomeKind.Crashed, detail, duration)
