"""Parse the checker's textual state dump into a StateSet.

Normative record grammar (documented here, validated against the fixtures
under tests/fixtures/dumps/):

    dump        := record*
    record      := header? conjunct+
    header      := "State" INT ":" NEWLINE
    conjunct    := "/\\" IDENT "=" value-text NEWLINE continuation*
    continuation: any non-blank line not starting with "/\\" or a header;
                  it extends the previous conjunct's value text.

Records are separated by one or more blank lines. Values use the checker's
rendering: integers, TRUE/FALSE, "strings", model values, <<sequences>>,
{sets}, [records |-> ...], and explicit functions (k :> v @@ ...). Duplicate
records collapse under set semantics; record order carries no meaning.
"""

from __future__ import annotations

import re
from pathlib import Path

from tlabench.errors import DumpFormatError
from tlabench.values import State, StateSet, ValueParseError, parse_value

_HEADER_RE = re.compile(r"^State\s+\d+\s*:?\s*$")
_CONJUNCT_RE = re.compile(r"^/\\\s*([A-Za-z_]\w*)\s*=\s*(.*)$")


def extract_states(dump_path: str | Path) -> StateSet:
    text = Path(dump_path).read_text(encoding="utf-8")
    states: set[State] = set()

    offset = 0
    pending: list[tuple[str, list[str], int]] = []  # (var, value lines, offset)
    record_open = False

    def close_record():
        nonlocal pending, record_open
        if not pending:
            record_open = False
            return
        pairs = []
        for var, chunks, off in pending:
            value_text = "\n".join(chunks)
            try:
                pairs.append((var, parse_value(value_text)))
            except ValueParseError as exc:
                raise DumpFormatError(f"bad value for {var}: {exc}", off) from None
        names = [v for v, _ in pairs]
        if len(names) != len(set(names)):
            raise DumpFormatError(f"duplicate variable in record: {names}", pending[0][2])
        states.add(State(frozenset(pairs)))
        pending = []
        record_open = False

    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        line_offset = offset
        offset += len(line.encode("utf-8"))
        if not stripped:
            close_record()
            continue
        if _HEADER_RE.match(stripped):
            close_record()
            record_open = True
            continue
        m = _CONJUNCT_RE.match(stripped)
        if m:
            record_open = True
            pending.append((m.group(1), [m.group(2).rstrip()], line_offset))
            continue
        if pending:
            pending[-1][1].append(stripped)
            continue
        raise DumpFormatError(f"unrecognised record line {stripped!r}", line_offset)
    close_record()
    return frozenset(states)
