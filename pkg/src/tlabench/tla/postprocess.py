"""The three mechanical repairs applied to generated TLA+ text.

1. EXTENDS becomes the union of what is already there and the standard
   module set below (Reals stays out: the checker cannot enumerate them).
2. NONE and NULL are declared as CONSTANTS when absent, so the config can
   bind them reflexively as model values.
3. Every action reachable from Next that leaves declared variables unprimed
   and uncovered by an UNCHANGED gets `/\\ UNCHANGED <<missing...>>` appended,
   missing variables in declaration order.

All other bytes are preserved, and the whole pass is idempotent.
"""

from __future__ import annotations

from tlabench.tla.scan import ActionDef, TlaModuleOutline, scan_module

REQUIRED_MODULES = ("Naturals", "Integers", "Sequences", "FiniteSets", "TLC")


def _line_end(text: str, offset: int) -> int:
    nl = text.find("\n", offset)
    return len(text) if nl == -1 else nl


def _repairable_actions(outline: TlaModuleOutline) -> list[ActionDef]:
    if outline.next_disjuncts:
        names = outline.next_disjuncts
    elif outline.action("Next") is not None:
        # Next with no named disjuncts is itself the action
        names = ["Next"]
    else:
        return []
    out = []
    for name in names:
        action = outline.action(name)
        if action is not None:
            out.append(action)
    return out


def postprocess(text: str) -> str:
    outline = scan_module(text)
    edits: list[tuple[int, int, str]] = []  # (start, end, replacement)

    # (1) EXTENDS union, existing names first, missing in canonical order;
    # (2) NONE / NULL model-value constants right after the EXTENDS line.
    merged = list(outline.extends)
    merged += [m for m in REQUIRED_MODULES if m not in merged]
    extends_line = "EXTENDS " + ", ".join(merged)
    missing_consts = [c for c in ("NONE", "NULL") if c not in outline.constants]
    consts_line = "CONSTANTS " + ", ".join(missing_consts) if missing_consts else None
    if outline.extends_span:
        start, end = outline.extends_span
        if text[start:end] != extends_line:
            edits.append((start, end, extends_line))
        if consts_line:
            insert_at = _line_end(text, end)
            edits.append((insert_at, insert_at, "\n" + consts_line))
    else:
        insert_at = _line_end(text, outline.header_end)
        block = "\n" + extends_line + ("\n" + consts_line if consts_line else "")
        edits.append((insert_at, insert_at, block))

    # (3) UNCHANGED completion on the actions Next dispatches to
    declared = outline.variables
    declared_set = set(declared)
    for action in _repairable_actions(outline):
        primed = action.primed_vars & declared_set
        covered = primed | (action.unchanged_vars & declared_set)
        missing = [v for v in declared if v not in covered]
        if not missing or primed == declared_set:
            continue
        insert_at = action.body_end
        while insert_at > action.body_start and text[insert_at - 1] in " \t\n":
            insert_at -= 1
        clause = "\n    /\\ UNCHANGED <<" + ", ".join(missing) + ">>"
        edits.append((insert_at, insert_at, clause))

    if not edits:
        return text

    result = text
    for start, end, replacement in sorted(edits, key=lambda e: (e[0], e[1]), reverse=True):
        result = result[:start] + replacement + result[end:]

    scan_module(result)  # repairs must never produce unscannable text
    return result
