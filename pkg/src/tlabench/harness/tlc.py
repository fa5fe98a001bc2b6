"""Drive the external TLC checker and classify its outcome.

The checker executable comes from configuration (CHECKER_CMD environment
variable, overridden by an explicit argument, which the config file layer
supplies). Each invocation runs in its own working directory under a
content-addressed parent keyed by a digest of (spec bytes, config bytes);
a process-wide registry hands out unique leaf directories so concurrent
runs never share paths. Flag spellings and output-pattern rules live in
tlc_profile.json, data not code, so checker upgrades are data updates.
"""

from __future__ import annotations

import enum
import hashlib
import json
import os
import re
import shlex
import subprocess
import tempfile
import threading
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


class Verdict(enum.Enum):
    Pass = "Pass"
    ParseError = "ParseError"
    SemanticError = "SemanticError"
    RuntimeError = "RuntimeError"
    InvariantViolation = "InvariantViolation"
    Timeout = "Timeout"
    ToolMissing = "ToolMissing"


@dataclass(frozen=True)
class RunLimits:
    wall_clock: float = 120.0
    worker_count: int = 1
    dump_states: bool = False

    def __post_init__(self):
        if self.wall_clock <= 0:
            raise ValueError("wall_clock must be positive")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")


@dataclass
class TlcResult:
    verdict: Verdict
    exit_code: int
    stdout: str
    stderr: str
    duration: float
    dump_path: Path | None = None

    @property
    def error_text(self) -> str:
        return (self.stdout + "\n" + self.stderr).strip()


_profile_cache: dict | None = None
_registry_lock = threading.Lock()
_registry: dict[str, int] = {}

_MODULE_RE = re.compile(r"^-{4,}\s*MODULE\s+(\w+)\s*-{4,}", re.MULTILINE)
_DUMP_NAME = "states.dump"


def load_profile(path: str | Path | None = None) -> dict:
    global _profile_cache
    if path is not None:
        return json.loads(Path(path).read_text())
    if _profile_cache is None:
        data = resources.files("tlabench.harness").joinpath("tlc_profile.json").read_text()
        _profile_cache = json.loads(data)
    return _profile_cache


def classify(exit_code: int, stdout: str, stderr: str, profile: dict | None = None) -> Verdict:
    """Total, deterministic verdict from exit code and output streams."""
    profile = profile or load_profile()
    combined = stdout + "\n" + stderr
    for rule in profile["rules"]:
        if any(pat in combined for pat in rule.get("contains", ())):
            return Verdict(rule["verdict"])
        if exit_code != 0 and exit_code in rule.get("exit_codes", ()):
            return Verdict(rule["verdict"])
    if exit_code == 0:
        return Verdict.Pass
    return Verdict.RuntimeError


def resolve_checker_cmd(explicit: str | None = None) -> str | None:
    if explicit:
        return explicit
    return os.environ.get("CHECKER_CMD")


def _workdir(spec_bytes: bytes, config_bytes: bytes, root: Path) -> Path:
    digest = hashlib.sha256(spec_bytes + b"\x00" + config_bytes).hexdigest()[:16]
    with _registry_lock:
        n = _registry.get(digest, 0) + 1
        _registry[digest] = n
    leaf = root / digest / f"run-{os.getpid()}-{n}"
    leaf.mkdir(parents=True, exist_ok=False)
    return leaf


def run_tlc(
    spec_path: str | Path,
    config_path: str | Path,
    limits: RunLimits = RunLimits(),
    checker_cmd: str | None = None,
    workdir_root: str | Path | None = None,
    profile: dict | None = None,
) -> TlcResult:
    profile = profile or load_profile()
    cmd = resolve_checker_cmd(checker_cmd)
    if not cmd:
        return TlcResult(Verdict.ToolMissing, -1, "", "no checker command configured", 0.0)

    spec_bytes = Path(spec_path).read_bytes()
    config_bytes = Path(config_path).read_bytes()
    root = Path(workdir_root) if workdir_root else Path(tempfile.gettempdir()) / "tlabench-tlc"
    work = _workdir(spec_bytes, config_bytes, root)

    spec_text = spec_bytes.decode("utf-8", errors="replace")
    m = _MODULE_RE.search(spec_text)
    module = m.group(1) if m else Path(spec_path).stem
    spec_file = work / f"{module}.tla"
    spec_file.write_bytes(spec_bytes)
    cfg_file = work / f"{module}.cfg"
    cfg_file.write_bytes(config_bytes)

    args = profile["args"]
    argv = shlex.split(cmd)
    argv += [args["config"], cfg_file.name, args["workers"], str(limits.worker_count)]
    if limits.dump_states:
        argv += [args["dump"], _DUMP_NAME]
    argv.append(spec_file.name)

    started = time.monotonic()
    try:
        proc = subprocess.run(
            argv, cwd=work, capture_output=True, text=True, timeout=limits.wall_clock
        )
    except subprocess.TimeoutExpired as exc:
        duration = time.monotonic() - started
        return TlcResult(
            Verdict.Timeout, -1,
            (exc.stdout or b"").decode("utf-8", "replace") if isinstance(exc.stdout, bytes) else (exc.stdout or ""),
            (exc.stderr or b"").decode("utf-8", "replace") if isinstance(exc.stderr, bytes) else (exc.stderr or ""),
            max(duration, limits.wall_clock),
        )
    except (FileNotFoundError, PermissionError) as exc:
        return TlcResult(Verdict.ToolMissing, -1, "", str(exc), time.monotonic() - started)
    duration = time.monotonic() - started

    dump_path = None
    if limits.dump_states:
        for candidate in (work / _DUMP_NAME, work / (_DUMP_NAME + ".dump")):
            if candidate.exists():
                dump_path = candidate
                break

    verdict = classify(proc.returncode, proc.stdout, proc.stderr, profile)
    return TlcResult(verdict, proc.returncode, proc.stdout, proc.stderr, duration, dump_path)
