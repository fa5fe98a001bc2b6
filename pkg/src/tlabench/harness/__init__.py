from tlabench.harness.tlc import (
    RunLimits,
    TlcResult,
    Verdict,
    classify,
    load_profile,
    resolve_checker_cmd,
    run_tlc,
)
from tlabench.harness.dump import extract_states
from tlabench.harness.pyrun import PyOutcome, PyOutcomeKind, resolve_python_cmd, run_python_tests
from tlabench.harness.check import SpecCheck, check_spec

__all__ = [
    "PyOutcome", "PyOutcomeKind", "RunLimits", "SpecCheck", "TlcResult",
    "Verdict", "check_spec", "classify", "extract_states", "load_profile",
    "resolve_checker_cmd", "resolve_python_cmd", "run_python_tests", "run_tlc",
]
