"""Core net structure: directed-orbit places, guarded transitions, weighted arcs.

A net is the tuple (places with rotation signs, transitions with guards, arcs
labeled by weight expressions, a color set, an initial marking).  The order of
a net is its number of orbit places.  Declaration order of places and
transitions is canonical: it fixes vector/matrix indexing and the default
firing policy, so `Net` stores them as ordered tuples.

Nets are immutable after construction and safe to share between concurrent
analyses; `Marking` is a value type (operations return new markings).
Structural rules are checked by `validate_net`, which reports violations
instead of raising, so partially-built nets can be diagnosed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .expr import TRUE, GuardExpr
from .multiset import Multiset

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

#: External scalar bindings read by guards (collision_prob, clock, user variables).
Environment = Mapping[str, float]


@dataclass(frozen=True)
class Place:
    """One directed cyclic orbit; rotation is +1 (clockwise) or -1 (anticlockwise)."""
    id: str
    rotation: int


@dataclass(frozen=True)
class Transition:
    id: str
    guard: GuardExpr = TRUE


@dataclass(frozen=True)
class Arc:
    """Directed arc between a place and a transition, labeled by a token calling."""
    source: str
    target: str
    weight: Multiset


class Marking:
    """Assignment of a token multiset to each place; absent place means empty."""

    __slots__ = ("_assignment",)

    def __init__(self, assignment: Mapping[str, Multiset | Mapping[str, int] | Iterable[str]] = ()):
        acc: dict[str, Multiset] = {}
        for place, tokens in dict(assignment).items():
            ms = tokens if isinstance(tokens, Multiset) else Multiset(tokens)
            if ms:
                acc[place] = ms
        object.__setattr__(self, "_assignment", acc)

    def __setattr__(self, name, value):
        raise AttributeError("Marking is immutable")

    def __getitem__(self, place: str) -> Multiset:
        return self._assignment.get(place, Multiset())

    def items(self) -> tuple[tuple[str, Multiset], ...]:
        """Nonempty (place, tokens) pairs sorted by place id."""
        return tuple(sorted(self._assignment.items()))

    def places(self) -> tuple[str, ...]:
        """Places currently holding at least one token."""
        return tuple(sorted(self._assignment))

    def as_dict(self) -> dict[str, Multiset]:
        return dict(self._assignment)

    def total_tokens(self) -> int:
        return sum(ms.total() for ms in self._assignment.values())

    def __bool__(self) -> bool:
        return bool(self._assignment)

    def __iter__(self) -> Iterator[str]:
        return iter(self.places())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Marking):
            return NotImplemented
        return self._assignment == other._assignment

    def __hash__(self) -> int:
        return hash(tuple((p, ms) for p, ms in self.items()))

    def __str__(self) -> str:
        if not self._assignment:
            return "(empty)"
        return ", ".join(f"{p}={ms}" for p, ms in self.items())

    def __repr__(self) -> str:
        return f"Marking({{{', '.join(f'{p!r}: {ms!r}' for p, ms in self.items())}}})"


@dataclass(frozen=True)
class Net:
    name: str
    colors: tuple[str, ...]
    places: tuple[Place, ...]
    transitions: tuple[Transition, ...]
    arcs: tuple[Arc, ...]
    initial_marking: Marking = field(default_factory=Marking)

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "arcs", tuple(self.arcs))

    @property
    def order(self) -> int:
        """Number of orbit places."""
        return len(self.places)

    @cached_property
    def place_ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.places)

    @cached_property
    def transition_ids(self) -> tuple[str, ...]:
        return tuple(t.id for t in self.transitions)

    @cached_property
    def place_index(self) -> dict[str, int]:
        return {p.id: i for i, p in enumerate(self.places)}

    @cached_property
    def transition_index(self) -> dict[str, int]:
        return {t.id: i for i, t in enumerate(self.transitions)}

    def place(self, pid: str) -> Place:
        try:
            return self.places[self.place_index[pid]]
        except KeyError:
            raise KeyError(f"unknown place {pid!r}") from None

    def transition(self, tid: str) -> Transition:
        try:
            return self.transitions[self.transition_index[tid]]
        except KeyError:
            raise KeyError(f"unknown transition {tid!r}") from None

    @cached_property
    def inputs(self) -> dict[str, tuple[tuple[str, Multiset], ...]]:
        """Per transition: (input place, called tokens) in arc-independent order."""
        acc: dict[str, list[tuple[str, Multiset]]] = {t.id: [] for t in self.transitions}
        for arc in self.arcs:
            if arc.target in acc and arc.source in self.place_index:
                acc[arc.target].append((arc.source, arc.weight))
        return {t: tuple(sorted(pairs)) for t, pairs in acc.items()}

    @cached_property
    def outputs(self) -> dict[str, tuple[tuple[str, Multiset], ...]]:
        """Per transition: (output place, deposited tokens)."""
        acc: dict[str, list[tuple[str, Multiset]]] = {t.id: [] for t in self.transitions}
        for arc in self.arcs:
            if arc.source in acc and arc.target in self.place_index:
                acc[arc.source].append((arc.target, arc.weight))
        return {t: tuple(sorted(pairs)) for t, pairs in acc.items()}


def validate_net(net: Net) -> list[str]:
    """Check every structural rule; returns one message per violation.

    An empty list means the net is well-formed: identifiers are legal and
    unique, arcs are bipartite and unduplicated, every weight and marking
    refers only to declared colors and places.
    """
    violations: list[str] = []

    seen_colors = set()
    for color in net.colors:
        if not IDENT_RE.match(color):
            violations.append(f"color {color!r}: not a legal identifier")
        if color in seen_colors:
            violations.append(f"color {color!r}: declared more than once")
        seen_colors.add(color)

    seen_places = set()
    for place in net.places:
        if not place.id or not IDENT_RE.match(place.id):
            violations.append(f"place {place.id!r}: not a legal identifier")
        if place.id in seen_places:
            violations.append(f"place {place.id!r}: duplicate id")
        seen_places.add(place.id)
        if place.rotation not in (1, -1):
            violations.append(f"place {place.id!r}: rotation must be +1 or -1, got {place.rotation}")

    seen_transitions = set()
    for t in net.transitions:
        if not t.id or not IDENT_RE.match(t.id):
            violations.append(f"transition {t.id!r}: not a legal identifier")
        if t.id in seen_transitions:
            violations.append(f"transition {t.id!r}: duplicate id")
        if t.id in seen_places:
            violations.append(f"transition {t.id!r}: id collides with a place")
        seen_transitions.add(t.id)

    seen_arcs = set()
    for arc in net.arcs:
        src_place = arc.source in seen_places
        src_trans = arc.source in seen_transitions
        dst_place = arc.target in seen_places
        dst_trans = arc.target in seen_transitions
        label = f"arc {arc.source}->{arc.target}"
        if not (src_place or src_trans):
            violations.append(f"{label}: unknown source {arc.source!r}")
        if not (dst_place or dst_trans):
            violations.append(f"{label}: unknown target {arc.target!r}")
        if (src_place and dst_place) or (src_trans and dst_trans):
            violations.append(f"{label}: endpoints must pair one place with one transition")
        if (arc.source, arc.target) in seen_arcs:
            violations.append(f"{label}: duplicate arc")
        seen_arcs.add((arc.source, arc.target))
        if not arc.weight:
            violations.append(f"{label}: weight expression is empty")
        for color in arc.weight:
            if color not in seen_colors:
                violations.append(f"{label}: weight uses undeclared color {color!r}")

    for place, tokens in net.initial_marking.items():
        if place not in seen_places:
            violations.append(f"marking: unknown place {place!r}")
        for color in tokens:
            if color not in seen_colors:
                violations.append(f"marking at {place!r}: undeclared color {color!r}")

    return violations


def marking_vector(net: Net, m: Marking) -> list[Multiset]:
    """The marking as a column vector: entry j is the multiset at the j-th place."""
    for place in m.places():
        if place not in net.place_index:
            raise KeyError(f"marking references unknown place {place!r}")
    return [m[pid] for pid in net.place_ids]


def marking_from_vector(net: Net, vector: Iterable[Multiset]) -> Marking:
    """Inverse of `marking_vector`; the vector must have one entry per place."""
    entries = list(vector)
    if len(entries) != len(net.places):
        raise ValueError(f"expected {len(net.places)} entries, got {len(entries)}")
    return Marking({pid: ms for pid, ms in zip(net.place_ids, entries)})
