"""Finite coloured operads and their (infinitesimal) bimodules as tables.

Every structure map is an explicit lookup table over labelled finite
sets, total on all colour-compatible instances whose composite arity
stays within the shared bound.  Axiom checkers quantify exhaustively
over table entries; an identity instance is skipped only when one of
its intermediates would exceed the arity bound (arity-local soundness).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .seqcore import (
    CLOSED,
    OPEN,
    Colour,
    FiniteSSequence,
    Profile,
    SSeqMap,
    enumerate_profiles,
    profile_closed,
    profile_open,
    profile_sort_key,
    sequence_to_json,
    splice_profile,
)


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    violations: tuple[str, ...]

    @staticmethod
    def from_violations(violations: Iterable[str]) -> "AxiomReport":
        vs = tuple(sorted(violations))
        return AxiomReport(not vs, vs)

    def merged_with(self, other: "AxiomReport") -> "AxiomReport":
        return AxiomReport.from_violations(self.violations + other.violations)


def _unit_profile(s: Colour) -> Profile:
    return Profile((s,), s)


@dataclass(frozen=True)
class FiniteOperad:
    """carrier + units + a total ∘_i table.

    units may omit a colour only when the operad has no identity there;
    compose holds a value for every colour-compatible (outer, i, inner)
    pair whose composite arity is within the carrier bound.
    """

    carrier: FiniteSSequence
    units: Mapping[Colour, str]
    compose: Mapping[tuple[Profile, str, int, Profile, str], str]

    def __post_init__(self):
        object.__setattr__(self, "units", dict(self.units))
        object.__setattr__(self, "compose", dict(self.compose))
        for s, u in self.units.items():
            if u not in self.carrier.elements(_unit_profile(s)):
                raise ValueError(f"unit {u!r} missing at profile {_unit_profile(s)!r}")
        bound = self.carrier.max_arity
        profiles = self.carrier.profiles()
        needed = 0
        for p1 in profiles:
            for p2 in profiles:
                if p1.arity + p2.arity - 1 > bound:
                    continue
                slots = [i for i in range(1, p1.arity + 1) if p1.inputs[i - 1] == p2.output]
                if not slots:
                    continue
                targets = {}
                for i in slots:
                    targets[i] = set(self.carrier.elements(splice_profile(p1, i, p2)))
                for x in self.carrier.elements(p1):
                    for i in slots:
                        tgt = targets[i]
                        for y in self.carrier.elements(p2):
                            v = self.compose.get((p1, x, i, p2, y))
                            if v is None:
                                raise ValueError(
                                    f"compose missing at {p1!r} {x!r} slot {i} {p2!r} {y!r}"
                                )
                            if v not in tgt:
                                raise ValueError(
                                    f"compose value {v!r} outside target at {p1!r} {x!r} slot {i}"
                                )
                            needed += 1
        if len(self.compose) != needed:
            for key in self.compose:
                p1, x, i, p2, y = key
                if x not in self.carrier.elements(p1) or y not in self.carrier.elements(p2):
                    raise ValueError(f"compose key {key!r} uses unknown elements")
                if (
                    not 1 <= i <= p1.arity
                    or p1.inputs[i - 1] != p2.output
                    or p1.arity + p2.arity - 1 > self.carrier.max_arity
                ):
                    raise ValueError(f"compose key {key!r} is not colour/arity valid")
            raise ValueError("compose table has duplicate or extra keys")

    def comp(self, p1: Profile, x: str, i: int, p2: Profile, y: str) -> tuple[Profile, str]:
        return splice_profile(p1, i, p2), self.compose[(p1, x, i, p2, y)]


def check_operad_axioms(o: FiniteOperad) -> AxiomReport:
    """Exhaustive unit and associativity check over all in-bound instances."""
    vs = []
    carrier = o.carrier
    for p in carrier.profiles():
        for x in carrier.elements(p):
            u_out = o.units.get(p.output)
            if u_out is not None:
                got = o.compose[(_unit_profile(p.output), u_out, 1, p, x)]
                if got != x:
                    vs.append(f"unit-left: {p!r} {x!r} -> {got!r}")
            for i in range(1, p.arity + 1):
                s = p.inputs[i - 1]
                u = o.units.get(s)
                if u is None:
                    continue
                got = o.compose[(p, x, i, _unit_profile(s), u)]
                if got != x:
                    vs.append(f"unit-right: {p!r} {x!r} slot {i} -> {got!r}")
    by_colour: dict[Colour, list[Profile]] = {}
    for p in carrier.profiles():
        by_colour.setdefault(p.output, []).append(p)
    bound = carrier.max_arity
    for (p1, x, i, p2, y), xy in o.compose.items():
        q = splice_profile(p1, i, p2)
        # z grafted inside the y block
        for j2 in range(1, p2.arity + 1):
            for p3 in by_colour.get(p2.inputs[j2 - 1], ()):
                if q.arity + p3.arity - 1 > bound:
                    continue
                q2 = splice_profile(p2, j2, p3)
                for z in carrier.elements(p3):
                    lhs = o.compose[(q, xy, i - 1 + j2, p3, z)]
                    inner = o.compose[(p2, y, j2, p3, z)]
                    rhs = o.compose[(p1, x, i, q2, inner)]
                    if lhs != rhs:
                        vs.append(
                            f"assoc-seq: {x!r}@{p1!r} o_{i} {y!r}@{p2!r} o_{i - 1 + j2} "
                            f"{z!r}@{p3!r}: {lhs!r} != {rhs!r}"
                        )
        # z grafted strictly left of the y block
        for j in range(1, i):
            for p3 in by_colour.get(p1.inputs[j - 1], ()):
                if q.arity + p3.arity - 1 > bound:
                    continue
                if p1.arity + p3.arity - 1 > bound:
                    continue
                q2 = splice_profile(p1, j, p3)
                for z in carrier.elements(p3):
                    lhs = o.compose[(q, xy, j, p3, z)]
                    xz = o.compose[(p1, x, j, p3, z)]
                    rhs = o.compose[(q2, xz, i + p3.arity - 1, p2, y)]
                    if lhs != rhs:
                        vs.append(
                            f"assoc-par: {x!r}@{p1!r} o_{i} {y!r}@{p2!r} / o_{j} "
                            f"{z!r}@{p3!r}: {lhs!r} != {rhs!r}"
                        )
    return AxiomReport.from_violations(vs)


def _act_carrier(unital: bool, max_arity: int) -> FiniteSSequence:
    table = {}
    for n in range(0 if unital else 1, max_arity + 1):
        table[profile_closed(n)] = ("*",)
    for n in range(1, max_arity + 1):
        table[profile_open(n)] = ("*",)
    return FiniteSSequence((CLOSED, OPEN), max_arity, table)


def _total_compose(carrier: FiniteSSequence, value: Callable) -> dict:
    compose = {}
    profiles = carrier.profiles()
    bound = carrier.max_arity
    for p1 in profiles:
        for p2 in profiles:
            if p1.arity + p2.arity - 1 > bound:
                continue
            for i in range(1, p1.arity + 1):
                if p1.inputs[i - 1] != p2.output:
                    continue
                for x in carrier.elements(p1):
                    for y in carrier.elements(p2):
                        compose[(p1, x, i, p2, y)] = value(p1, x, i, p2, y)
    return compose


def builtin_act(unital: bool, max_arity: int) -> FiniteOperad:
    """The two-coloured operad of (unital) monoid actions; one operation
    per closed arity and one per open arity, so every composite is the
    unique operation of the composite profile."""
    if max_arity < 2:
        raise ValueError("max_arity must be >= 2")
    carrier = _act_carrier(unital, max_arity)
    units = {CLOSED: "*", OPEN: "*"}
    return FiniteOperad(carrier, units, _total_compose(carrier, lambda *k: "*"))


def builtin_as(strict: bool, max_arity: int) -> FiniteOperad:
    """The (strict) associative operad: the closed-colour part of Act."""
    if max_arity < 2:
        raise ValueError("max_arity must be >= 2")
    table = {profile_closed(n): ("*",) for n in range(1 if strict else 0, max_arity + 1)}
    carrier = FiniteSSequence((CLOSED,), max_arity, table)
    return FiniteOperad(carrier, {CLOSED: "*"}, _total_compose(carrier, lambda *k: "*"))


def restriction_to_colour(o: FiniteOperad, colour: Colour) -> FiniteOperad:
    """The single-colour operad on the profiles using only `colour`."""
    keep = {
        p: o.carrier.elements(p)
        for p in o.carrier.profiles()
        if p.output == colour and all(c == colour for c in p.inputs)
    }
    carrier = FiniteSSequence((colour,), o.carrier.max_arity, keep)
    compose = {
        k: v for k, v in o.compose.items() if k[0] in keep and k[3] in keep
    }
    units = {colour: o.units[colour]} if colour in o.units else {}
    return FiniteOperad(carrier, units, compose)


def type_act_profiles(max_arity: int) -> list[Profile]:
    out = [profile_closed(n) for n in range(max_arity + 1)]
    out += [profile_open(n) for n in range(1, max_arity + 1)]
    return sorted(out, key=profile_sort_key)


def _endo_label(indices: Iterable[int], compact: bool) -> str:
    if compact:
        return "f" + "".join(str(i) for i in indices)
    return "f" + ",".join(str(i) for i in indices)


def endomorphism_operad(
    family: Mapping[Colour, Sequence[str]],
    max_arity: int,
    function_cap: int = 10000,
    profiles: Iterable[Profile] | None = None,
) -> FiniteOperad:
    """All set-functions between products of the family's sets, composed
    by substitution.  `profiles` optionally restricts the carrier to a
    profile subset closed under composition (the full table can be
    astronomically large); the cap refuses any profile whose function
    count exceeds it."""
    sets = {s: tuple(family[s]) for s in family}
    for s, elems in sets.items():
        if not elems:
            raise ValueError(f"the set at colour {s.id} is empty")
        if len(set(elems)) != len(elems):
            raise ValueError(f"duplicate labels at colour {s.id}")
    colours = tuple(sorted(sets))
    if profiles is None:
        profs = enumerate_profiles(colours, max_arity)
    else:
        profs = sorted(set(profiles), key=profile_sort_key)
        pset = set(profs)
        for p1 in profs:
            for p2 in profs:
                if p1.arity + p2.arity - 1 > max_arity:
                    continue
                for i in range(1, p1.arity + 1):
                    if p1.inputs[i - 1] == p2.output and splice_profile(p1, i, p2) not in pset:
                        raise ValueError(
                            f"profile set not closed: {p1!r} slot {i} {p2!r}"
                        )
    compact = all(len(elems) <= 10 for elems in sets.values())
    index = {s: {e: k for k, e in enumerate(elems)} for s, elems in sets.items()}
    functions: dict[Profile, dict[str, tuple[str, ...]]] = {}
    domains: dict[Profile, dict[tuple[str, ...], int]] = {}
    table = {}
    for p in profs:
        if any(c not in sets for c in p.inputs) or p.output not in sets:
            raise ValueError(f"profile {p!r} uses a colour outside the family")
        count = len(sets[p.output]) ** _domain_size(sets, p)
        if count > function_cap:
            raise ValueError(
                f"profile {p!r}: {count} functions exceeds the cap {function_cap}"
            )
        rows = list(product(*[sets[c] for c in p.inputs]))
        domains[p] = {row: k for k, row in enumerate(rows)}
        fns = {}
        for values in product(sets[p.output], repeat=len(rows)):
            label = _endo_label((index[p.output][v] for v in values), compact)
            fns[label] = values
        functions[p] = fns
        table[p] = tuple(fns)
    carrier = FiniteSSequence(colours, max_arity, table)
    labels_of = {
        p: {vals: lab for lab, vals in fns.items()} for p, fns in functions.items()
    }

    def compose_value(p1, x, i, p2, y):
        q = splice_profile(p1, i, p2)
        xf, yf = functions[p1][x], functions[p2][y]
        dom1, dom2 = domains[p1], domains[p2]
        out = []
        for row in product(*[sets[c] for c in q.inputs]):
            mid = row[i - 1 : i - 1 + p2.arity]
            inner = yf[dom2[mid]]
            out.append(xf[dom1[row[: i - 1] + (inner,) + row[i - 1 + p2.arity :]]])
        return labels_of[q][tuple(out)]

    units = {}
    for s in colours:
        p = _unit_profile(s)
        if p in functions:
            units[s] = labels_of[p][sets[s]]
    return FiniteOperad(carrier, units, _total_compose(carrier, compose_value))


def _domain_size(sets, p: Profile) -> int:
    size = 1
    for c in p.inputs:
        size *= len(sets[c])
    return size


def endo_element_label(
    family: Mapping[Colour, Sequence[str]], p: Profile, fn: Callable[[tuple], str]
) -> str:
    """Label of the set-function given by fn over the profile's domain,
    in the encoding used by endomorphism_operad."""
    sets = {s: tuple(family[s]) for s in family}
    compact = all(len(elems) <= 10 for elems in sets.values())
    index = {e: k for k, e in enumerate(sets[p.output])}
    rows = product(*[sets[c] for c in p.inputs])
    return _endo_label((index[fn(row)] for row in rows), compact)


@dataclass(frozen=True)
class OperadMapWitness:
    """An operad map verified at construction: preserves units and every
    composition entry of the source."""

    src: FiniteOperad
    dst: FiniteOperad
    underlying: SSeqMap

    def __post_init__(self):
        if self.underlying.src is not self.src.carrier and self.underlying.src != self.src.carrier:
            raise ValueError("underlying map does not start at the source carrier")
        if self.underlying.dst is not self.dst.carrier and self.underlying.dst != self.dst.carrier:
            raise ValueError("underlying map does not end at the target carrier")
        for s, u in self.src.units.items():
            if s not in self.dst.units:
                raise ValueError(f"target has no unit at colour {s.id}")
            if self.apply(_unit_profile(s), u) != self.dst.units[s]:
                raise ValueError(f"unit at colour {s.id} not preserved")
        for (p1, x, i, p2, y), v in self.src.compose.items():
            got = self.dst.compose[(p1, self.apply(p1, x), i, p2, self.apply(p2, y))]
            want = self.apply(splice_profile(p1, i, p2), v)
            if got != want:
                raise ValueError(
                    f"composition not preserved at {p1!r} {x!r} slot {i} {p2!r} {y!r}"
                )

    def apply(self, p: Profile, x: str) -> str:
        return self.underlying.apply(p, x)


def operad_map(src: FiniteOperad, dst: FiniteOperad, maps) -> OperadMapWitness:
    return OperadMapWitness(src, dst, SSeqMap(src.carrier, dst.carrier, maps))


def identity_witness(o: FiniteOperad) -> OperadMapWitness:
    maps = {p: {x: x for x in o.carrier.elements(p)} for p in o.carrier.profiles()}
    return operad_map(o, o, maps)


def act_inclusion(max_arity: int) -> OperadMapWitness:
    maps = {
        p: {"*": "*"} for p in builtin_act(False, max_arity).carrier.profiles()
    }
    return operad_map(builtin_act(False, max_arity), builtin_act(True, max_arity), maps)


def _pair_table_check(over: FiniteOperad, carrier: FiniteSSequence, left, right):
    if set(over.carrier.colours) != set(carrier.colours):
        raise ValueError("carrier and operad colour sets differ")
    if carrier.max_arity != over.carrier.max_arity:
        raise ValueError("carrier and operad arity bounds differ")
    bound = carrier.max_arity
    needed = 0
    for p1 in over.carrier.profiles():
        for pa in carrier.profiles():
            if p1.arity + pa.arity - 1 > bound:
                continue
            for i in range(1, p1.arity + 1):
                if p1.inputs[i - 1] != pa.output:
                    continue
                tgt = set(carrier.elements(splice_profile(p1, i, pa)))
                for x in over.carrier.elements(p1):
                    for a in carrier.elements(pa):
                        v = left.get((p1, x, i, pa, a))
                        if v is None:
                            raise ValueError(
                                f"left table missing at {p1!r} {x!r} slot {i} {pa!r} {a!r}"
                            )
                        if v not in tgt:
                            raise ValueError(f"left value {v!r} outside target")
                        needed += 1
    if needed != len(left):
        raise ValueError("left table has extra keys")
    needed = 0
    for pa in carrier.profiles():
        for p2 in over.carrier.profiles():
            if pa.arity + p2.arity - 1 > bound:
                continue
            for i in range(1, pa.arity + 1):
                if pa.inputs[i - 1] != p2.output:
                    continue
                tgt = set(carrier.elements(splice_profile(pa, i, p2)))
                for a in carrier.elements(pa):
                    for y in over.carrier.elements(p2):
                        v = right.get((pa, a, i, p2, y))
                        if v is None:
                            raise ValueError(
                                f"right table missing at {pa!r} {a!r} slot {i} {p2!r} {y!r}"
                            )
                        if v not in tgt:
                            raise ValueError(f"right value {v!r} outside target")
                        needed += 1
    if needed != len(right):
        raise ValueError("right table has extra keys")


@dataclass(frozen=True)
class InfBimoduleTables:
    """Single-slot left insertions x ∘_i a and right compositions a ∘^i y."""

    over: FiniteOperad
    carrier: FiniteSSequence
    left_inf: Mapping[tuple[Profile, str, int, Profile, str], str]
    right_inf: Mapping[tuple[Profile, str, int, Profile, str], str]

    def __post_init__(self):
        object.__setattr__(self, "left_inf", dict(self.left_inf))
        object.__setattr__(self, "right_inf", dict(self.right_inf))
        _pair_table_check(self.over, self.carrier, self.left_inf, self.right_inf)


@dataclass(frozen=True)
class BimoduleTables:
    """Full left action γ_l(x; a_1,…,a_n) and right compositions a ∘^i y.

    gamma_left is keyed by (operad profile, operad element, tuple of
    (module profile, module element)) and is total on argument tuples
    whose combined arity stays within the bound."""

    over: FiniteOperad
    carrier: FiniteSSequence
    gamma_left: Mapping[tuple[Profile, str, tuple], str]
    right_act: Mapping[tuple[Profile, str, int, Profile, str], str]

    def __post_init__(self):
        object.__setattr__(self, "gamma_left", dict(self.gamma_left))
        object.__setattr__(self, "right_act", dict(self.right_act))
        if set(self.over.carrier.colours) != set(self.carrier.colours):
            raise ValueError("carrier and operad colour sets differ")
        if self.carrier.max_arity != self.over.carrier.max_arity:
            raise ValueError("carrier and operad arity bounds differ")
        bound = self.carrier.max_arity
        needed = 0
        for p1 in self.over.carrier.profiles():
            for args in _argument_tuples(self.carrier, p1.inputs, bound - 0):
                total = sum(pa.arity for pa, _ in args)
                if total > bound:
                    continue
                res = Profile(
                    tuple(c for pa, _ in args for c in pa.inputs), p1.output
                )
                tgt = set(self.carrier.elements(res))
                for x in self.over.carrier.elements(p1):
                    v = self.gamma_left.get((p1, x, args))
                    if v is None:
                        raise ValueError(f"gamma missing at {p1!r} {x!r} {args!r}")
                    if v not in tgt:
                        raise ValueError(f"gamma value {v!r} outside target")
                    needed += 1
        if needed != len(self.gamma_left):
            raise ValueError("gamma table has extra keys")
        needed = 0
        for pa in self.carrier.profiles():
            for p2 in self.over.carrier.profiles():
                if pa.arity + p2.arity - 1 > bound:
                    continue
                for i in range(1, pa.arity + 1):
                    if pa.inputs[i - 1] != p2.output:
                        continue
                    tgt = set(self.carrier.elements(splice_profile(pa, i, p2)))
                    for a in self.carrier.elements(pa):
                        for y in self.over.carrier.elements(p2):
                            v = self.right_act.get((pa, a, i, p2, y))
                            if v is None:
                                raise ValueError(
                                    f"right table missing at {pa!r} {a!r} slot {i} {p2!r} {y!r}"
                                )
                            if v not in tgt:
                                raise ValueError(f"right value {v!r} outside target")
                            needed += 1
        if needed != len(self.right_act):
            raise ValueError("right table has extra keys")


def _argument_tuples(carrier: FiniteSSequence, colours: tuple[Colour, ...], budget: int):
    """All tuples of (profile, element) matching the colour list with
    total arity <= budget."""
    if not colours:
        yield ()
        return
    first, rest = colours[0], colours[1:]
    min_rest = 0
    for p in carrier.profiles():
        if p.output != first or p.arity > budget - min_rest:
            continue
        for a in carrier.elements(p):
            for tail in _argument_tuples(carrier, rest, budget - p.arity):
                yield ((p, a),) + tail


def induced_infbimodule(f: OperadMapWitness) -> InfBimoduleTables:
    """The target of an operad map as an infinitesimal bimodule over the
    source: insertions are computed in the target after mapping the
    operad argument through."""
    over, dst = f.src, f.dst
    carrier = dst.carrier
    bound = carrier.max_arity
    if over.carrier.max_arity != bound:
        raise ValueError("source and target arity bounds differ")
    left = {}
    for p1 in over.carrier.profiles():
        for pa in carrier.profiles():
            if p1.arity + pa.arity - 1 > bound:
                continue
            for i in range(1, p1.arity + 1):
                if p1.inputs[i - 1] != pa.output:
                    continue
                for x in over.carrier.elements(p1):
                    fx = f.apply(p1, x)
                    for a in carrier.elements(pa):
                        left[(p1, x, i, pa, a)] = dst.compose[(p1, fx, i, pa, a)]
    right = {}
    for pa in carrier.profiles():
        for p2 in over.carrier.profiles():
            if pa.arity + p2.arity - 1 > bound:
                continue
            for i in range(1, pa.arity + 1):
                if pa.inputs[i - 1] != p2.output:
                    continue
                for y in over.carrier.elements(p2):
                    fy = f.apply(p2, y)
                    for a in carrier.elements(pa):
                        right[(pa, a, i, p2, y)] = dst.compose[(pa, a, i, p2, fy)]
    return InfBimoduleTables(over, carrier, left, right)


def _gamma_by_insertion(compose, p1: Profile, x: str, args) -> tuple[Profile, str]:
    """Fold γ_l(x; args) out of single insertions, filling slots in
    ascending argument arity so no intermediate exceeds the bound."""
    order = sorted(range(len(args)), key=lambda t: (args[t][0].arity, t))
    current_p, current_x = p1, x
    inserted: list[int] = []
    for t in order:
        pa, a = args[t]
        pos = t + 1 + sum(args[s][0].arity - 1 for s in inserted if s < t)
        current_x = compose[(current_p, current_x, pos, pa, a)]
        current_p = splice_profile(current_p, pos, pa)
        inserted.append(t)
    return current_p, current_x


def induced_bimodule(f: OperadMapWitness) -> BimoduleTables:
    """The target of an operad map as a bimodule over the source; the
    full left action is assembled from single compositions."""
    over, dst = f.src, f.dst
    carrier = dst.carrier
    bound = carrier.max_arity
    if over.carrier.max_arity != bound:
        raise ValueError("source and target arity bounds differ")
    gamma = {}
    for p1 in over.carrier.profiles():
        for x in over.carrier.elements(p1):
            fx = f.apply(p1, x)
            for args in _argument_tuples(carrier, p1.inputs, bound):
                gamma[(p1, x, args)] = _gamma_by_insertion(dst.compose, p1, fx, args)[1]
    right = {}
    for pa in carrier.profiles():
        for p2 in over.carrier.profiles():
            if pa.arity + p2.arity - 1 > bound:
                continue
            for i in range(1, pa.arity + 1):
                if pa.inputs[i - 1] != p2.output:
                    continue
                for y in over.carrier.elements(p2):
                    fy = f.apply(p2, y)
                    for a in carrier.elements(pa):
                        right[(pa, a, i, p2, y)] = dst.compose[(pa, a, i, p2, fy)]
    return BimoduleTables(over, carrier, gamma, right)


bimodule_from_operad_map = induced_bimodule


def operad_self_bimodule(o: FiniteOperad) -> BimoduleTables:
    return induced_bimodule(identity_witness(o))


def check_infbimodule_axioms(m: InfBimoduleTables) -> AxiomReport:
    vs = []
    over, carrier = m.over, m.carrier
    left, right = m.left_inf, m.right_inf
    compose = over.compose
    bound = carrier.max_arity
    by_colour: dict[Colour, list[Profile]] = {}
    for p in over.carrier.profiles():
        by_colour.setdefault(p.output, []).append(p)
    for pa in carrier.profiles():
        for a in carrier.elements(pa):
            u = over.units.get(pa.output)
            if u is not None:
                got = left[(_unit_profile(pa.output), u, 1, pa, a)]
                if got != a:
                    vs.append(f"unit-left: {pa!r} {a!r} -> {got!r}")
            for i in range(1, pa.arity + 1):
                u = over.units.get(pa.inputs[i - 1])
                if u is None:
                    continue
                got = right[(pa, a, i, _unit_profile(pa.inputs[i - 1]), u)]
                if got != a:
                    vs.append(f"unit-right: {pa!r} {a!r} slot {i} -> {got!r}")
    # left-left: x o_i (y o_j a) = (x o_i y) o_{i+j-1} a
    for (p1, x, i, p2, y), xy in compose.items():
        q_xy = splice_profile(p1, i, p2)
        for j in range(1, p2.arity + 1):
            for pa in carrier.profiles():
                if pa.output != p2.inputs[j - 1]:
                    continue
                if q_xy.arity + pa.arity - 1 > bound:
                    continue
                q_ya = splice_profile(p2, j, pa)
                for a in carrier.elements(pa):
                    inner = left[(p2, y, j, pa, a)]
                    lhs = left[(p1, x, i, q_ya, inner)]
                    rhs = left[(q_xy, xy, i - 1 + j, pa, a)]
                    if lhs != rhs:
                        vs.append(
                            f"left-left: {x!r}@{p1!r} o_{i} {y!r}@{p2!r} o_{j} {a!r}@{pa!r}:"
                            f" {lhs!r} != {rhs!r}"
                        )
    # mixed: (x o_i a) further composed with an operad element
    for (p1, x, i, pa, a), w in left.items():
        q = splice_profile(p1, i, pa)
        k = pa.arity
        for j in range(1, q.arity + 1):
            for p3 in by_colour.get(q.inputs[j - 1], ()):
                if q.arity + p3.arity - 1 > bound:
                    continue
                for z in over.carrier.elements(p3):
                    lhs = right[(q, w, j, p3, z)]
                    if j < i:
                        xz = compose.get((p1, x, j, p3, z))
                        if xz is None:
                            continue
                        rhs = left[(splice_profile(p1, j, p3), xz, i + p3.arity - 1, pa, a)]
                        name = "left-right-disjoint"
                    elif j <= i + k - 1:
                        inner = right[(pa, a, j - i + 1, p3, z)]
                        rhs = left[(p1, x, i, splice_profile(pa, j - i + 1, p3), inner)]
                        name = "left-right-nested"
                    else:
                        xz = compose.get((p1, x, j - k + 1, p3, z))
                        if xz is None:
                            continue
                        rhs = left[(splice_profile(p1, j - k + 1, p3), xz, i, pa, a)]
                        name = "left-right-disjoint"
                    if lhs != rhs:
                        vs.append(
                            f"{name}: {x!r}@{p1!r} o_{i} {a!r}@{pa!r} / o^{j} {z!r}@{p3!r}:"
                            f" {lhs!r} != {rhs!r}"
                        )
    # right-right: (a o^i y) o^j z
    for (pa, a, i, p2, y), w in right.items():
        q = splice_profile(pa, i, p2)
        for j in range(1, q.arity + 1):
            if i <= j <= i + p2.arity - 1:
                for p3 in by_colour.get(q.inputs[j - 1], ()):
                    if q.arity + p3.arity - 1 > bound:
                        continue
                    for z in over.carrier.elements(p3):
                        lhs = right[(q, w, j, p3, z)]
                        inner = compose[(p2, y, j - i + 1, p3, z)]
                        rhs = right[(pa, a, i, splice_profile(p2, j - i + 1, p3), inner)]
                        if lhs != rhs:
                            vs.append(
                                f"right-right-nested: {a!r}@{pa!r} o^{i} {y!r}@{p2!r} o^{j}"
                                f" {z!r}@{p3!r}: {lhs!r} != {rhs!r}"
                            )
            elif j < i:
                for p3 in by_colour.get(q.inputs[j - 1], ()):
                    if q.arity + p3.arity - 1 > bound:
                        continue
                    for z in over.carrier.elements(p3):
                        lhs = right[(q, w, j, p3, z)]
                        az = right.get((pa, a, j, p3, z))
                        if az is None:
                            continue
                        rhs = right[(splice_profile(pa, j, p3), az, i + p3.arity - 1, p2, y)]
                        if lhs != rhs:
                            vs.append(
                                f"right-right-disjoint: {a!r}@{pa!r} o^{i} {y!r}@{p2!r} / o^{j}"
                                f" {z!r}@{p3!r}: {lhs!r} != {rhs!r}"
                            )
    return AxiomReport.from_violations(vs)


def check_bimodule_axioms(m: BimoduleTables) -> AxiomReport:
    vs = []
    over, carrier = m.over, m.carrier
    gamma, right = m.gamma_left, m.right_act
    bound = carrier.max_arity
    by_colour: dict[Colour, list[Profile]] = {}
    for p in over.carrier.profiles():
        by_colour.setdefault(p.output, []).append(p)
    for pa in carrier.profiles():
        for a in carrier.elements(pa):
            u = over.units.get(pa.output)
            if u is not None:
                got = gamma[(_unit_profile(pa.output), u, ((pa, a),))]
                if got != a:
                    vs.append(f"unit-gamma: {pa!r} {a!r} -> {got!r}")
            for i in range(1, pa.arity + 1):
                u = over.units.get(pa.inputs[i - 1])
                if u is None:
                    continue
                got = right[(pa, a, i, _unit_profile(pa.inputs[i - 1]), u)]
                if got != a:
                    vs.append(f"unit-right: {pa!r} {a!r} slot {i} -> {got!r}")
    decomp: dict[tuple[Profile, str], list] = {}
    for (p1, x, i, p2, y), xy in over.compose.items():
        decomp.setdefault((splice_profile(p1, i, p2), xy), []).append((p1, x, i, p2, y))
    for (q, w, args), lhs in gamma.items():
        # gamma versus operadic composition of the acting element
        for p1, x, i, p2, y in decomp.get((q, w), ()):
            block = args[i - 1 : i - 1 + p2.arity]
            inner = gamma[(p2, y, block)]
            inner_p = Profile(tuple(c for pb, _ in block for c in pb.inputs), p2.output)
            outer_args = args[: i - 1] + ((inner_p, inner),) + args[i - 1 + p2.arity :]
            rhs = gamma[(p1, x, outer_args)]
            if lhs != rhs:
                vs.append(
                    f"gamma-compose: {x!r}@{p1!r} o_{i} {y!r}@{p2!r} on {args!r}:"
                    f" {lhs!r} != {rhs!r}"
                )
        # gamma versus a right composition into one argument block
        res_p = Profile(tuple(c for pa, _ in args for c in pa.inputs), q.output)
        start = 1
        for t, (pa, a) in enumerate(args):
            for j2 in range(1, pa.arity + 1):
                j = start + j2 - 1
                for p3 in by_colour.get(pa.inputs[j2 - 1], ()):
                    if res_p.arity + p3.arity - 1 > bound:
                        continue
                    for z in over.carrier.elements(p3):
                        lhs2 = right[(res_p, lhs, j, p3, z)]
                        inner = right[(pa, a, j2, p3, z)]
                        new_args = (
                            args[:t]
                            + ((splice_profile(pa, j2, p3), inner),)
                            + args[t + 1 :]
                        )
                        rhs2 = gamma[(q, w, new_args)]
                        if lhs2 != rhs2:
                            vs.append(
                                f"gamma-right: gamma({w!r}@{q!r}; {args!r}) o^{j}"
                                f" {z!r}@{p3!r}: {lhs2!r} != {rhs2!r}"
                            )
            start += pa.arity
    # right-right relations are identical to the infinitesimal ones
    for (pa, a, i, p2, y), w in right.items():
        q = splice_profile(pa, i, p2)
        for j in range(1, q.arity + 1):
            for p3 in by_colour.get(q.inputs[j - 1], ()):
                if q.arity + p3.arity - 1 > bound:
                    continue
                for z in over.carrier.elements(p3):
                    lhs = right[(q, w, j, p3, z)]
                    if i <= j <= i + p2.arity - 1:
                        inner = over.compose[(p2, y, j - i + 1, p3, z)]
                        rhs = right[(pa, a, i, splice_profile(p2, j - i + 1, p3), inner)]
                        name = "right-right-nested"
                    elif j < i:
                        az = right.get((pa, a, j, p3, z))
                        if az is None:
                            continue
                        rhs = right[(splice_profile(pa, j, p3), az, i + p3.arity - 1, p2, y)]
                        name = "right-right-disjoint"
                    else:
                        continue
                    if lhs != rhs:
                        vs.append(
                            f"{name}: {a!r}@{pa!r} o^{i} {y!r}@{p2!r} / o^{j} {z!r}@{p3!r}:"
                            f" {lhs!r} != {rhs!r}"
                        )
    return AxiomReport.from_violations(vs)


def is_bimodule_map(src: BimoduleTables, dst: BimoduleTables, f: SSeqMap) -> AxiomReport:
    """Exhaustive structure-preservation check for a map of bimodules
    over the same operad."""
    if src.over != dst.over:
        raise ValueError("bimodules live over different operads")
    vs = []
    for (p1, x, args), v in src.gamma_left.items():
        fargs = tuple((pa, f.apply(pa, a)) for pa, a in args)
        res_p = Profile(tuple(c for pa, _ in args for c in pa.inputs), p1.output)
        got = dst.gamma_left[(p1, x, fargs)]
        want = f.apply(res_p, v)
        if got != want:
            vs.append(f"gamma: {x!r}@{p1!r} {args!r}: {got!r} != {want!r}")
    for (pa, a, i, p2, y), v in src.right_act.items():
        got = dst.right_act[(pa, f.apply(pa, a), i, p2, y)]
        want = f.apply(splice_profile(pa, i, p2), v)
        if got != want:
            vs.append(f"right: {a!r}@{pa!r} o^{i} {y!r}@{p2!r}: {got!r} != {want!r}")
    return AxiomReport.from_violations(vs)


def is_infbimodule_map(
    src: InfBimoduleTables, dst: InfBimoduleTables, f: SSeqMap
) -> AxiomReport:
    if src.over != dst.over:
        raise ValueError("infinitesimal bimodules live over different operads")
    vs = []
    for (p1, x, i, pa, a), v in src.left_inf.items():
        q = splice_profile(p1, i, pa)
        got = dst.left_inf[(p1, x, i, pa, f.apply(pa, a))]
        want = f.apply(q, v)
        if got != want:
            vs.append(f"left: {x!r}@{p1!r} o_{i} {a!r}@{pa!r}: {got!r} != {want!r}")
    for (pa, a, i, p2, y), v in src.right_inf.items():
        q = splice_profile(pa, i, p2)
        got = dst.right_inf[(pa, f.apply(pa, a), i, p2, y)]
        want = f.apply(q, v)
        if got != want:
            vs.append(f"right: {a!r}@{pa!r} o^{i} {y!r}@{p2!r}: {got!r} != {want!r}")
    return AxiomReport.from_violations(vs)


def infbimodule_from_bimodule_map(m: BimoduleTables, eta: SSeqMap) -> InfBimoduleTables:
    """A bimodule receiving a map from its operad becomes an infinitesimal
    bimodule: empty slots are filled with images of the units."""
    report = is_bimodule_map(operad_self_bimodule(m.over), m, eta)
    if not report.passed:
        raise ValueError(f"eta is not a bimodule map: {report.violations[0]}")
    over, carrier = m.over, m.carrier
    bound = carrier.max_arity
    left = {}
    for p1 in over.carrier.profiles():
        unit_imgs = []
        for s in p1.inputs:
            if s not in over.units:
                raise ValueError(f"over operad has no unit at colour {s.id}")
            up = _unit_profile(s)
            unit_imgs.append((up, eta.apply(up, over.units[s])))
        for pa in carrier.profiles():
            if p1.arity + pa.arity - 1 > bound:
                continue
            for i in range(1, p1.arity + 1):
                if p1.inputs[i - 1] != pa.output:
                    continue
                for x in over.carrier.elements(p1):
                    for a in carrier.elements(pa):
                        args = (
                            tuple(unit_imgs[: i - 1])
                            + ((pa, a),)
                            + tuple(unit_imgs[i:])
                        )
                        left[(p1, x, i, pa, a)] = m.gamma_left[(p1, x, args)]
    return InfBimoduleTables(over, carrier, left, dict(m.right_act))


def _require_act_shape(m: BimoduleTables, eta: SSeqMap) -> int:
    bound = m.carrier.max_arity
    if m.over != builtin_act(False, bound):
        raise ValueError("the bimodule must live over the non-unital monoid-actions operad")
    allowed = set(type_act_profiles(bound))
    for p in m.carrier.profiles():
        if p not in allowed:
            raise ValueError(f"carrier profile {p!r} is not closed or open-right")
    if eta.src != builtin_act(True, bound).carrier:
        raise ValueError("eta must start at the unital monoid-actions carrier")
    if eta.dst != m.carrier:
        raise ValueError("eta must land in the bimodule carrier")
    report = is_bimodule_map(act_bimodule(bound), m, eta)
    if not report.passed:
        raise ValueError(f"eta is not a bimodule map: {report.violations[0]}")
    return bound


def act_bimodule(max_arity: int) -> BimoduleTables:
    """The unital monoid-actions operad as a bimodule over its non-unital part."""
    return induced_bimodule(act_inclusion(max_arity))


def m_star(m: BimoduleTables, eta: SSeqMap) -> tuple[BimoduleTables, SSeqMap]:
    """Collapse every closed profile to the image of eta, keeping the open
    part; the collapsed carrier is stable under all actions because eta
    is a map of bimodules."""
    bound = _require_act_shape(m, eta)
    table = {}
    for p in m.carrier.profiles():
        if p.output == CLOSED:
            table[p] = (eta.apply(p, "*"),)
        else:
            table[p] = m.carrier.elements(p)
    carrier = FiniteSSequence(m.carrier.colours, bound, table)
    keep = {p: set(v) for p, v in table.items()}

    def kept(p, x):
        return x in keep.get(p, ())

    gamma = {
        (p1, x, args): v
        for (p1, x, args), v in m.gamma_left.items()
        if all(kept(pa, a) for pa, a in args)
    }
    right = {
        (pa, a, i, p2, y): v
        for (pa, a, i, p2, y), v in m.right_act.items()
        if kept(pa, a)
    }
    collapsed = BimoduleTables(m.over, carrier, gamma, right)
    maps = {
        p: {"*": table[p][0] if p.output == CLOSED else eta.apply(p, "*")}
        for p in eta.src.profiles()
    }
    return collapsed, SSeqMap(eta.src, carrier, maps)


def x_star(x: FiniteOperad, eta: OperadMapWitness) -> tuple[FiniteOperad, OperadMapWitness]:
    """Operad analogue of the closed-part collapse, along a verified map
    from the unital monoid-actions operad."""
    bound = x.carrier.max_arity
    if eta.src != builtin_act(True, bound):
        raise ValueError("eta must start at the unital monoid-actions operad")
    if eta.dst != x:
        raise ValueError("eta must land in the operad being collapsed")
    table = {}
    for p in x.carrier.profiles():
        if p.output == CLOSED and all(c == CLOSED for c in p.inputs):
            table[p] = (eta.apply(p, "*"),)
        else:
            table[p] = x.carrier.elements(p)
    carrier = FiniteSSequence(x.carrier.colours, bound, table)
    keep = {p: set(v) for p, v in table.items()}
    compose = {
        (p1, a, i, p2, b): v
        for (p1, a, i, p2, b), v in x.compose.items()
        if a in keep.get(p1, ()) and b in keep.get(p2, ())
    }
    units = dict(x.units)
    if CLOSED in units:
        units[CLOSED] = eta.apply(_unit_profile(CLOSED), "*")
    star = FiniteOperad(carrier, units, compose)
    maps = {p: {"*": eta.apply(p, "*")} for p in eta.src.carrier.profiles()}
    return star, operad_map(eta.src, star, maps)


def check_assumption_13(
    o: FiniteOperad, b: BimoduleTables, alpha: OperadMapWitness, beta: SSeqMap
) -> AxiomReport:
    """The two-sided unit condition on the degree-zero element
    beta(alpha(arity-0)) against the multiplication alpha(arity-2)."""
    vs = []
    mult_p = profile_closed(2)
    mult = alpha.apply(mult_p, "*")
    e_p = profile_closed(0)
    e = beta.apply(e_p, alpha.apply(e_p, "*"))
    for k in range(0, b.carrier.max_arity + 1):
        pk = profile_closed(k)
        for x in b.carrier.elements(pk):
            got = b.gamma_left[(mult_p, mult, ((e_p, e), (pk, x)))]
            if got != x:
                vs.append(f"left: {x!r} at arity {k} -> {got!r}")
            got = b.gamma_left[(mult_p, mult, ((pk, x), (e_p, e)))]
            if got != x:
                vs.append(f"right: {x!r} at arity {k} -> {got!r}")
    return AxiomReport.from_violations(vs)


def x_construction(
    o: FiniteOperad,
    b: BimoduleTables,
    alpha: OperadMapWitness,
    beta: SSeqMap,
    enforce_assumption: bool = True,
) -> tuple[FiniteOperad, OperadMapWitness | None]:
    """A two-coloured operad from a single-colour operad o and a bimodule b
    over it: closed part o, open part b shifted up by one arity; the open
    slot composes through the multiplication alpha(arity-2).

    With enforce_assumption the two-sided unit condition is checked first
    and a violation raises with its witnessing element; the returned map
    witness sends the closed generator to alpha's image and the open one
    to beta of alpha's image one arity down.
    """
    if tuple(o.carrier.colours) != (CLOSED,):
        raise ValueError("o must be a single-colour operad on the closed colour")
    if b.over != o:
        raise ValueError("b must be a bimodule over o")
    bound = o.carrier.max_arity
    if alpha.src != builtin_as(False, bound):
        raise ValueError("alpha must start at the unital associative operad")
    if alpha.dst != o:
        raise ValueError("alpha must land in o")
    beta_report = is_bimodule_map(operad_self_bimodule(o), b, beta)
    if not beta_report.passed:
        raise ValueError(f"beta is not a bimodule map: {beta_report.violations[0]}")
    if enforce_assumption:
        report = check_assumption_13(o, b, alpha, beta)
        if not report.passed:
            raise ValueError(f"unit assumption fails: {report.violations[0]}")
    mult_p = profile_closed(2)
    mult = alpha.apply(mult_p, "*")
    table = {}
    for n in range(0, bound + 1):
        elems = o.carrier.elements(profile_closed(n))
        if elems:
            table[profile_closed(n)] = elems
    for n in range(1, bound + 1):
        elems = b.carrier.elements(profile_closed(n - 1))
        if elems:
            table[profile_open(n)] = elems
    carrier = FiniteSSequence((CLOSED, OPEN), bound, table)
    compose = dict(o.compose)
    for n in range(1, bound + 1):
        pn, bn = profile_open(n), profile_closed(n - 1)
        for x in b.carrier.elements(bn):
            for m_ in range(0, bound + 1):
                if n + m_ - 1 > bound:
                    continue
                pm, bm = profile_closed(m_), profile_closed(m_ - 1)
                for i in range(1, n):
                    for y in o.carrier.elements(pm):
                        compose[(pn, x, i, pm, y)] = b.right_act[(bn, x, i, pm, y)]
                if m_ >= 1:
                    for y in b.carrier.elements(bm):
                        compose[(pn, x, n, profile_open(m_), y)] = b.gamma_left[
                            (mult_p, mult, ((bn, x), (bm, y)))
                        ]
    units = {}
    if CLOSED in o.units:
        units[CLOSED] = o.units[CLOSED]
    e_p = profile_closed(0)
    units[OPEN] = beta.apply(e_p, alpha.apply(e_p, "*"))
    operad = FiniteOperad(carrier, units, compose)
    if not enforce_assumption:
        return operad, None
    maps = {}
    for p in builtin_act(True, bound).carrier.profiles():
        if p.output == CLOSED:
            maps[p] = {"*": alpha.apply(p, "*")}
        else:
            down = profile_closed(p.arity - 1)
            maps[p] = {"*": beta.apply(down, alpha.apply(down, "*"))}
    eta = operad_map(builtin_act(True, bound), operad, maps)
    return operad, eta


def _profile_id(p: Profile) -> str:
    return ",".join(c.id for c in p.inputs) + ";" + p.output.id


def _profile_from_id(text: str, known: dict[str, Colour]) -> Profile:
    ins, _, out = text.partition(";")
    inputs = tuple(known[c] for c in ins.split(",") if c)
    return Profile(inputs, known[out])


def operad_to_json(o: FiniteOperad) -> str:
    doc = json.loads(sequence_to_json(o.carrier))
    doc["units"] = {s.id: u for s, u in sorted(o.units.items())}
    doc["compose"] = [
        {
            "outer": [_profile_id(p1), x],
            "pos": i,
            "inner": [_profile_id(p2), y],
            "value": v,
        }
        for (p1, x, i, p2, y), v in sorted(
            o.compose.items(),
            key=lambda kv: (
                profile_sort_key(kv[0][0]),
                kv[0][1],
                kv[0][2],
                profile_sort_key(kv[0][3]),
                kv[0][4],
            ),
        )
    ]
    return json.dumps(doc, indent=2) + "\n"


def operad_from_json(text: str) -> FiniteOperad:
    from .seqcore import sequence_from_json

    doc = json.loads(text)
    carrier = sequence_from_json(
        json.dumps({k: doc[k] for k in ("colours", "maxArity", "profiles")})
    )
    known = {c.id: c for c in carrier.colours}
    units = {known[s]: u for s, u in doc.get("units", {}).items()}
    compose = {}
    for entry in doc.get("compose", []):
        p1 = _profile_from_id(entry["outer"][0], known)
        p2 = _profile_from_id(entry["inner"][0], known)
        compose[(p1, entry["outer"][1], entry["pos"], p2, entry["inner"][1])] = entry[
            "value"
        ]
    return FiniteOperad(carrier, units, compose)


def infbimodule_to_json(m: InfBimoduleTables) -> str:
    doc = json.loads(sequence_to_json(m.carrier))
    doc["leftInf"] = _pair_entries(m.left_inf)
    doc["rightInf"] = _pair_entries(m.right_inf)
    return json.dumps(doc, indent=2) + "\n"


def bimodule_to_json(m: BimoduleTables) -> str:
    doc = json.loads(sequence_to_json(m.carrier))
    doc["gammaLeft"] = [
        {
            "op": [_profile_id(p1), x],
            "args": [[_profile_id(pa), a] for pa, a in args],
            "value": v,
        }
        for (p1, x, args), v in sorted(
            m.gamma_left.items(),
            key=lambda kv: (
                profile_sort_key(kv[0][0]),
                kv[0][1],
                tuple((profile_sort_key(pa), a) for pa, a in kv[0][2]),
            ),
        )
    ]
    doc["rightAct"] = _pair_entries(m.right_act)
    return json.dumps(doc, indent=2) + "\n"


def _pair_entries(table) -> list:
    return [
        {
            "elem": [_profile_id(pa), a],
            "pos": i,
            "with": [_profile_id(p2), y],
            "value": v,
        }
        for (pa, a, i, p2, y), v in sorted(
            table.items(),
            key=lambda kv: (
                profile_sort_key(kv[0][0]),
                kv[0][1],
                kv[0][2],
                profile_sort_key(kv[0][3]),
                kv[0][4],
            ),
        )
    ]


def _carrier_from_doc(doc: dict) -> FiniteSSequence:
    from .seqcore import sequence_from_json

    return sequence_from_json(
        json.dumps({k: doc[k] for k in ("colours", "maxArity", "profiles")})
    )


def _pair_table_from_doc(entries: list, known: dict[str, Colour]) -> dict:
    table = {}
    for entry in entries:
        pa = _profile_from_id(entry["elem"][0], known)
        p2 = _profile_from_id(entry["with"][0], known)
        table[(pa, entry["elem"][1], entry["pos"], p2, entry["with"][1])] = entry[
            "value"
        ]
    return table


def infbimodule_from_json(text: str, over: FiniteOperad) -> InfBimoduleTables:
    doc = json.loads(text)
    carrier = _carrier_from_doc(doc)
    known = {c.id: c for c in carrier.colours}
    left = _pair_table_from_doc(doc.get("leftInf", []), known)
    right = _pair_table_from_doc(doc.get("rightInf", []), known)
    return InfBimoduleTables(over, carrier, left, right)


def bimodule_from_json(text: str, over: FiniteOperad) -> BimoduleTables:
    doc = json.loads(text)
    carrier = _carrier_from_doc(doc)
    known = {c.id: c for c in carrier.colours}
    gamma = {}
    for entry in doc.get("gammaLeft", []):
        p1 = _profile_from_id(entry["op"][0], known)
        args = tuple(
            (_profile_from_id(pid, known), a) for pid, a in entry["args"]
        )
        gamma[(p1, entry["op"][1], args)] = entry["value"]
    right = _pair_table_from_doc(doc.get("rightAct", []), known)
    return BimoduleTables(over, carrier, gamma, right)


def sequence_map_to_json(f: SSeqMap) -> str:
    doc = {
        "maps": [
            {"at": _profile_id(p), "of": dict(sorted(f.maps[p].items()))}
            for p in f.src.profiles()
        ]
    }
    return json.dumps(doc, indent=2) + "\n"


def sequence_map_from_json(
    text: str, src: FiniteSSequence, dst: FiniteSSequence
) -> SSeqMap:
    doc = json.loads(text)
    known = {c.id: c for c in src.colours}
    maps = {
        _profile_from_id(entry["at"], known): dict(entry["of"])
        for entry in doc.get("maps", [])
    }
    return SSeqMap(src, dst, maps)
