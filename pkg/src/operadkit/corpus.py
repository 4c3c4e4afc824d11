"""Seeded corpora of small verified operad maps and induced bimodules.

A map from the monoid-actions operad into an endomorphism operad is the
same data as an associative multiplication on the closed set together
with a compatible action on the open set; these are enumerated by brute
force on sets of size at most three and drawn deterministically by seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .seqcore import CLOSED, OPEN, profile_closed, profile_open
from .algebra import (
    FiniteOperad,
    OperadMapWitness,
    builtin_act,
    builtin_as,
    endo_element_label,
    endomorphism_operad,
    operad_map,
    type_act_profiles,
)

CLOSED_LABELS = ("0", "1", "2")
OPEN_LABELS = ("x", "y", "z")


def associative_mults(labels: tuple[str, ...]) -> list[dict]:
    """All associative binary tables on the labels, in deterministic order."""
    out = []
    pairs = list(product(labels, repeat=2))
    for values in product(labels, repeat=len(pairs)):
        mu = dict(zip(pairs, values))
        if all(
            mu[(mu[(a, b)], c)] == mu[(a, mu[(b, c)])]
            for a in labels
            for b in labels
            for c in labels
        ):
            out.append(mu)
    return out


def unit_of(mu: dict, labels: tuple[str, ...]) -> str | None:
    for e in labels:
        if all(mu[(e, a)] == a == mu[(a, e)] for a in labels):
            return e
    return None


def compatible_actions(
    mu: dict, c_labels: tuple[str, ...], o_labels: tuple[str, ...], unit: str | None
) -> list[dict]:
    """Actions a(c, o) with a(mu(c1,c2), o) = a(c1, a(c2, o)); when a unit
    is supplied it must act as the identity."""
    out = []
    pairs = list(product(c_labels, o_labels))
    for values in product(o_labels, repeat=len(pairs)):
        a = dict(zip(pairs, values))
        if unit is not None and any(a[(unit, o)] != o for o in o_labels):
            continue
        if all(
            a[(mu[(c1, c2)], o)] == a[(c1, a[(c2, o)])]
            for c1 in c_labels
            for c2 in c_labels
            for o in o_labels
        ):
            out.append(a)
    return out


@dataclass(frozen=True)
class ActInstance:
    name: str
    witness: OperadMapWitness  # from builtin_act into a type-Act endomorphism operad
    unital: bool


def _fold_mult(mu: dict, unit: str | None):
    def fold(row: tuple) -> str:
        if not row:
            return unit
        acc = row[-1]
        for v in reversed(row[:-1]):
            acc = mu[(v, acc)]
        return acc

    return fold


def _fold_action(a: dict):
    def fold(row: tuple) -> str:
        acc = row[-1]
        for c in reversed(row[:-1]):
            acc = a[(c, acc)]
        return acc

    return fold


def act_endo_witness(
    n_closed: int,
    n_open: int,
    mu: dict,
    action: dict,
    max_arity: int,
    unital: bool,
    function_cap: int = 25000,
) -> OperadMapWitness:
    family = {CLOSED: CLOSED_LABELS[:n_closed], OPEN: OPEN_LABELS[:n_open]}
    endo = endomorphism_operad(
        family, max_arity, function_cap=function_cap, profiles=type_act_profiles(max_arity)
    )
    unit = unit_of(mu, family[CLOSED]) if unital else None
    mult_fold = _fold_mult(mu, unit)
    act_fold = _fold_action(action)
    maps = {}
    for n in range(0 if unital else 1, max_arity + 1):
        p = profile_closed(n)
        maps[p] = {"*": endo_element_label(family, p, mult_fold)}
    for n in range(1, max_arity + 1):
        p = profile_open(n)
        maps[p] = {"*": endo_element_label(family, p, act_fold)}
    return operad_map(builtin_act(unital, max_arity), endo, maps)


# (closed size, open size, max arity) kept small enough that every
# endomorphism profile stays under the function cap
VIABLE_SHAPES = (
    (1, 1, 3),
    (1, 1, 4),
    (2, 1, 3),
    (1, 2, 3),
    (1, 2, 4),
    (2, 2, 3),
    (1, 3, 3),
    (1, 3, 4),
    (2, 3, 2),
)


def _structure_space(n_closed: int, n_open: int, unital: bool):
    c_labels = CLOSED_LABELS[:n_closed]
    o_labels = OPEN_LABELS[:n_open]
    combos = []
    for mu in associative_mults(c_labels):
        e = unit_of(mu, c_labels)
        if unital and e is None:
            continue
        for a in compatible_actions(mu, c_labels, o_labels, e if unital else None):
            combos.append((mu, a, e))
    return combos


def seeded_act_instances(
    seed: int, count: int, unital: bool, max_max_arity: int = 4
) -> list[ActInstance]:
    """Deterministic corpus of verified maps from builtin_act: the seed
    picks shapes and compatible (multiplication, action) structures."""
    rng = random.Random(seed)
    shapes = [s for s in VIABLE_SHAPES if s[2] <= max_max_arity]
    structures = {}
    out = []
    for _ in range(count):
        n_c, n_o, ma = shapes[rng.randrange(len(shapes))]
        if (n_c, n_o) not in structures:
            structures[(n_c, n_o)] = _structure_space(n_c, n_o, unital)
        combos = structures[(n_c, n_o)]
        k = rng.randrange(len(combos))
        mu, a, e = combos[k]
        w = act_endo_witness(n_c, n_o, mu, a, ma, unital)
        out.append(ActInstance(f"end(c{n_c},o{n_o},ar{ma})#{k}", w, unital))
    return out


@dataclass(frozen=True)
class AsInstance:
    name: str
    witness: OperadMapWitness  # from the unital associative operad


def seeded_as_instances(seed: int, count: int, max_max_arity: int = 3) -> list[AsInstance]:
    """Deterministic corpus of verified maps from the unital associative
    operad into single-colour endomorphism operads."""
    rng = random.Random(seed)
    space = []
    for n in (1, 2):
        labels = CLOSED_LABELS[:n]
        for k, mu in enumerate(associative_mults(labels)):
            if unit_of(mu, labels) is None:
                continue
            for ma in (2, 3):
                if ma > max_max_arity:
                    continue
                space.append((n, ma, k, mu))
    if count <= len(space):
        picks = rng.sample(space, count)
    else:
        picks = [space[rng.randrange(len(space))] for _ in range(count)]
    out = []
    for n, ma, k, mu in picks:
        family = {CLOSED: CLOSED_LABELS[:n]}
        endo = endomorphism_operad(family, ma)
        unit = unit_of(mu, family[CLOSED])
        fold = _fold_mult(mu, unit)
        maps = {}
        for arity in range(0, ma + 1):
            p = profile_closed(arity)
            maps[p] = {"*": endo_element_label(family, p, fold)}
        w = operad_map(builtin_as(False, ma), endo, maps)
        out.append(AsInstance(f"as-end(c{n},ar{ma})#{k}", w))
    return out


def restrict_witness_positive(w: OperadMapWitness) -> OperadMapWitness:
    """Precompose a witness from the unital monoid-actions operad with the
    inclusion of its arity-positive part."""
    bound = w.src.carrier.max_arity
    maps = {
        p: dict(w.underlying.maps[p])
        for p in w.src.carrier.profiles()
        if p.arity >= 1
    }
    return operad_map(builtin_act(False, bound), w.dst, maps)


def positive_part(o: FiniteOperad) -> FiniteOperad:
    """The suboperad of arity-positive operations."""
    from .seqcore import FiniteSSequence

    table = {
        p: o.carrier.elements(p) for p in o.carrier.profiles() if p.arity >= 1
    }
    carrier = FiniteSSequence(o.carrier.colours, o.carrier.max_arity, table)
    compose = {
        k: v
        for k, v in o.compose.items()
        if k[0].arity >= 1 and k[3].arity >= 1
    }
    return FiniteOperad(carrier, o.units, compose)


def restrict_operad_type_act(o: FiniteOperad) -> FiniteOperad:
    """The suboperad on the arity-positive profiles of monoid-action
    type: all-closed inputs, or closed inputs with one trailing open."""
    from .seqcore import FiniteSSequence

    keep = {p for p in type_act_profiles(o.carrier.max_arity) if p.arity >= 1}
    table = {p: o.carrier.elements(p) for p in o.carrier.profiles() if p in keep}
    carrier = FiniteSSequence(o.carrier.colours, o.carrier.max_arity, table)
    compose = {
        k: v for k, v in o.compose.items() if k[0] in keep and k[3] in keep
    }
    return FiniteOperad(carrier, o.units, compose)


@dataclass(frozen=True)
class FreePair:
    """A generator sequence and a target witness for adjunction checks."""

    name: str
    m: "FiniteSSequence"
    witness: OperadMapWitness


_FREE_PAIR_SHAPES = ((1, 1, 3), (2, 1, 3), (1, 2, 3), (2, 2, 3))


def seeded_free_pairs(seed: int, count: int, map_cap: int = 64) -> list[FreePair]:
    """Small (generators, target) pairs over the arity-positive
    monoid-actions operad at bound three.

    The number of candidate sequence maps out of the generators is kept
    at or below map_cap so adjunction checks stay exhaustive."""
    from .seqcore import FiniteSSequence

    rng = random.Random(seed)
    gen_profiles = (profile_closed(1), profile_open(1), profile_closed(2))
    structures = {}
    out = []
    while len(out) < count:
        n_c, n_o, ma = _FREE_PAIR_SHAPES[rng.randrange(len(_FREE_PAIR_SHAPES))]
        if (n_c, n_o) not in structures:
            structures[(n_c, n_o)] = _structure_space(n_c, n_o, True)
        combos = structures[(n_c, n_o)]
        k = rng.randrange(len(combos))
        mu, a, e = combos[k]
        full = restrict_witness_positive(act_endo_witness(n_c, n_o, mu, a, ma, True))
        dst = restrict_operad_type_act(full.dst)
        w = operad_map(
            full.src,
            dst,
            {p: dict(full.underlying.maps[p]) for p in full.src.carrier.profiles()},
        )
        table: dict = {}
        for idx in range(1 + rng.randrange(2)):
            p = gen_profiles[rng.randrange(len(gen_profiles))]
            table.setdefault(p, []).append(f"g{idx}")
        m = FiniteSSequence(
            (CLOSED, OPEN), ma, {p: tuple(v) for p, v in table.items()}
        )
        maps = 1
        for p in m.profiles():
            maps *= len(w.dst.carrier.elements(p)) ** len(m.elements(p))
        if maps > map_cap:
            continue
        gens = sum(len(m.elements(p)) for p in m.profiles())
        out.append(FreePair(f"freepair(c{n_c},o{n_o})#{k}g{gens}", m, w))
    return out
