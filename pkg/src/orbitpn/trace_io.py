"""Trace documents: JSON serialization of firing traces, plus replay.

Schema::

    {
      "net": str,
      "mode": "subset" | "exact",
      "initial": {place: weight-expression},
      "events": [{"step": int, "transition": str,
                  "env": {name: number}, "marking": {place: weight-expression}}],
      "final": {place: weight-expression},
      "deadlock": bool
    }

Markings serialize as weight-expression strings per place, empty places
omitted, so documents are readable and reparse through the same grammar the
net files use.  `replay` re-executes a document against its net and checks
every intermediate marking, which is how round-trip integrity is tested.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import expr
from .engine import FiringEvent, Trace, enabled_set, fire
from .model import Marking, Net
from .multiset import Multiset


class ReplayError(ValueError):
    pass


def marking_to_strings(m: Marking) -> dict[str, str]:
    return {place: str(tokens) for place, tokens in m.items()}


def marking_from_strings(data: dict[str, str], colors) -> Marking:
    assignment: dict[str, Multiset] = {}
    for place, text in data.items():
        assignment[place] = expr.parse_weight_expr(text, colors)
    return Marking(assignment)


def trace_document(net: Net, trace: Trace, mode: str = "subset",
                   final_env: dict[str, float] | None = None) -> dict:
    """Serialize a trace; the deadlock flag reports whether anything is still
    enabled at the final marking under `final_env` (default: the last event's
    environment, or an empty one for an event-free trace)."""
    if final_env is None:
        final_env = dict(trace.events[-1].env_snapshot) if trace.events else {}
    deadlock = not enabled_set(net, trace.final, final_env, mode)
    return {
        "net": trace.net_name,
        "mode": mode,
        "initial": marking_to_strings(trace.initial),
        "events": [
            {
                "step": ev.step,
                "transition": ev.transition,
                "env": dict(ev.env_snapshot),
                "marking": marking_to_strings(ev.marking_after),
            }
            for ev in trace.events
        ],
        "final": marking_to_strings(trace.final),
        "deadlock": deadlock,
    }


def trace_from_document(doc: dict, colors) -> Trace:
    initial = marking_from_strings(doc["initial"], colors)
    events = tuple(
        FiringEvent(
            step=ev["step"],
            transition=ev["transition"],
            env_snapshot={k: float(v) for k, v in ev["env"].items()},
            marking_after=marking_from_strings(ev["marking"], colors),
        )
        for ev in doc["events"]
    )
    return Trace(doc["net"], initial, events)


def write_trace(path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def read_trace(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def replay(net: Net, doc: dict) -> Marking:
    """Re-fire every event of the document and return the resulting marking.

    Raises ReplayError if any recorded intermediate or final marking differs
    from what the engine reproduces.
    """
    mode = doc.get("mode", "subset")
    m = marking_from_strings(doc["initial"], net.colors)
    for ev in doc["events"]:
        m = fire(net, m, ev["transition"], ev["env"], mode)
        recorded = marking_from_strings(ev["marking"], net.colors)
        if m != recorded:
            raise ReplayError(
                f"step {ev['step']}: replay produced {m}, document records {recorded}"
            )
    final = marking_from_strings(doc["final"], net.colors)
    if m != final:
        raise ReplayError(f"final marking diverges: replay {m}, document {final}")
    return m
