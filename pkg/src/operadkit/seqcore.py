"""Two-coloured sequences of finite labelled sets.

A sequence assigns to every profile (a tuple of input colours and an
output colour) a finite set of element labels.  Profiles are bounded by
a fixed maximal arity, and an empty set at a profile is the same thing
as the profile being absent from the table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping


@dataclass(frozen=True, order=True)
class Colour:
    id: str


CLOSED = Colour("closed")
OPEN = Colour("open")


@dataclass(frozen=True)
class Profile:
    inputs: tuple[Colour, ...]
    output: Colour

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def __repr__(self) -> str:
        ins = ",".join(c.id for c in self.inputs)
        return f"({ins};{self.output.id})"


def profile_closed(n: int) -> Profile:
    """The all-closed profile with n inputs."""
    return Profile((CLOSED,) * n, CLOSED)


def profile_open(n: int) -> Profile:
    """The profile with n - 1 closed inputs, one final open input, open output."""
    if n < 1:
        raise ValueError("an open profile needs at least one input")
    return Profile((CLOSED,) * (n - 1) + (OPEN,), OPEN)


def profile_sort_key(p: Profile):
    return (p.arity, tuple(c.id for c in p.inputs), p.output.id)


def splice_profile(outer: Profile, i: int, inner: Profile) -> Profile:
    """Profile of a composite that substitutes `inner` into slot i (1-based)."""
    if not 1 <= i <= outer.arity:
        raise ValueError(f"slot {i} out of range for arity {outer.arity}")
    if outer.inputs[i - 1] != inner.output:
        raise ValueError(
            f"colour mismatch at slot {i}: {outer.inputs[i - 1].id} vs {inner.output.id}"
        )
    inputs = outer.inputs[: i - 1] + inner.inputs + outer.inputs[i:]
    return Profile(inputs, outer.output)


def enumerate_profiles(colours: Iterable[Colour], max_arity: int) -> list[Profile]:
    """All profiles over the colour set with arity <= max_arity, sorted."""
    cs = tuple(colours)
    out = []
    for n in range(max_arity + 1):
        for inputs in product(cs, repeat=n):
            for output in cs:
                out.append(Profile(inputs, output))
    return sorted(out, key=profile_sort_key)


@dataclass(frozen=True)
class FiniteSSequence:
    """Finite sets of labels indexed by profiles, up to a maximal arity."""

    colours: tuple[Colour, ...]
    max_arity: int
    table: Mapping[Profile, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.colours)) != len(self.colours):
            raise ValueError("duplicate colours")
        if self.max_arity < 0:
            raise ValueError("max_arity must be >= 0")
        allowed = set(self.colours)
        normalized = {}
        for p, labels in self.table.items():
            if p.arity > self.max_arity:
                raise ValueError(f"profile {p!r}: arity exceeds max_arity {self.max_arity}")
            if p.output not in allowed or any(c not in allowed for c in p.inputs):
                raise ValueError(f"profile {p!r}: colour outside the workspace colours")
            labels = tuple(labels)
            if len(set(labels)) != len(labels):
                raise ValueError(f"profile {p!r}: duplicate labels")
            if labels:
                normalized[p] = tuple(sorted(labels))
        object.__setattr__(self, "table", normalized)

    def elements(self, p: Profile) -> tuple[str, ...]:
        return self.table.get(p, ())

    def profiles(self) -> list[Profile]:
        return sorted(self.table, key=profile_sort_key)

    def total(self) -> int:
        return sum(len(v) for v in self.table.values())


def is_of_type(m: FiniteSSequence, n: FiniteSSequence) -> bool:
    """True iff m is empty at every profile where n is empty."""
    if set(m.colours) != set(n.colours):
        raise ValueError("sequences live over different colour sets")
    for p in m.profiles():
        if not n.elements(p):
            return False
    return True


@dataclass(frozen=True)
class SSeqMap:
    """A map of sequences: a label function over every profile of the source."""

    src: FiniteSSequence
    dst: FiniteSSequence
    maps: Mapping[Profile, Mapping[str, str]]

    def __post_init__(self):
        for p in self.src.profiles():
            fp = self.maps.get(p)
            if fp is None:
                raise ValueError(f"map missing at profile {p!r}")
            targets = set(self.dst.elements(p))
            for x in self.src.elements(p):
                if x not in fp:
                    raise ValueError(f"map at {p!r} undefined on {x!r}")
                if fp[x] not in targets:
                    raise ValueError(f"map at {p!r} sends {x!r} outside the target")

    def apply(self, p: Profile, x: str) -> str:
        return self.maps[p][x]


def _colour_from_json(value, path: str, known: dict[str, Colour]) -> Colour:
    if not isinstance(value, str):
        raise ValueError(f"{path}: expected a colour name string")
    if value not in known:
        raise ValueError(f"{path}: unknown colour {value!r}")
    return known[value]


def sequence_from_json(text: str) -> FiniteSSequence:
    """Parse the canonical JSON form, naming the offending path on errors."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"$: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ValueError("$: expected an object")
    for key in ("colours", "maxArity", "profiles"):
        if key not in doc:
            raise ValueError(f"$.{key}: missing")
    raw_colours = doc["colours"]
    if not isinstance(raw_colours, list) or not all(isinstance(c, str) for c in raw_colours):
        raise ValueError("$.colours: expected a list of colour name strings")
    if len(set(raw_colours)) != len(raw_colours):
        raise ValueError("$.colours: duplicate colour")
    known = {c: Colour(c) for c in raw_colours}
    max_arity = doc["maxArity"]
    if not isinstance(max_arity, int) or max_arity < 0:
        raise ValueError("$.maxArity: expected a non-negative integer")
    if not isinstance(doc["profiles"], list):
        raise ValueError("$.profiles: expected a list")
    table = {}
    for k, entry in enumerate(doc["profiles"]):
        path = f"$.profiles[{k}]"
        if not isinstance(entry, dict):
            raise ValueError(f"{path}: expected an object")
        for key in ("inputs", "output", "elements"):
            if key not in entry:
                raise ValueError(f"{path}.{key}: missing")
        if not isinstance(entry["inputs"], list):
            raise ValueError(f"{path}.inputs: expected a list")
        inputs = tuple(
            _colour_from_json(c, f"{path}.inputs[{j}]", known)
            for j, c in enumerate(entry["inputs"])
        )
        output = _colour_from_json(entry["output"], f"{path}.output", known)
        p = Profile(inputs, output)
        if p.arity > max_arity:
            raise ValueError(f"{path}: arity {p.arity} exceeds maxArity {max_arity}")
        if not isinstance(entry["elements"], list) or not all(
            isinstance(x, str) for x in entry["elements"]
        ):
            raise ValueError(f"{path}.elements: expected a list of label strings")
        if len(set(entry["elements"])) != len(entry["elements"]):
            raise ValueError(f"{path}.elements: duplicate label")
        if p in table:
            raise ValueError(f"{path}: profile listed twice")
        table[p] = tuple(entry["elements"])
    return FiniteSSequence(tuple(known[c] for c in raw_colours), max_arity, table)


def sequence_to_json(seq: FiniteSSequence) -> str:
    """Canonical JSON: profiles sorted by (arity, inputs, output), labels sorted."""
    doc = {
        "colours": [c.id for c in seq.colours],
        "maxArity": seq.max_arity,
        "profiles": [
            {
                "inputs": [c.id for c in p.inputs],
                "output": p.output.id,
                "elements": list(seq.elements(p)),
            }
            for p in seq.profiles()
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_sequence(path) -> FiniteSSequence:
    with open(path, "r", encoding="utf-8") as handle:
        return sequence_from_json(handle.read())


def store_sequence(seq: FiniteSSequence, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(sequence_to_json(seq))
