"""Free infinitesimal bimodules and free bimodules over labelled trees.

Elements are labelled pearl trees (one pearl) and section trees (one
pearl on every leaf-trunk path).  Because every non-pearl vertex sits
at distance one from a pearl, no two operad-labelled vertices are ever
adjacent, so the defining relation reduces to contracting unit-labelled
vertices; normal forms are exactly the labellings with no unit label on
a non-pearl vertex, and each class has a unique normal form.

Actions graft a corolla onto an input and either keep it (the grafted
edge touches the pearl) or compose it into the adjacent operad label.
Folding evaluates an element in a target (infinitesimal) bimodule by
cutting corollas one at a time; the default cut order inserts small
arities first so intermediate profiles stay within the arity bound
whenever the bound permits evaluation at all.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .seqcore import (
    Colour,
    FiniteSSequence,
    Profile,
    SSeqMap,
    enumerate_profiles,
    splice_profile,
)
from .algebra import (
    BimoduleTables,
    FiniteOperad,
    InfBimoduleTables,
    _argument_tuples,
    is_bimodule_map,
    is_infbimodule_map,
)
from .trees import (
    PearlTree,
    SectionTree,
    corolla,
    enumerate_pearl_trees,
    enumerate_section_trees,
    graft,
    stree,
    stree_code,
    vertex_paths,
    vertex_profile,
)

Path = tuple[int, ...]
Labels = tuple[tuple[Path, str], ...]


@dataclass(frozen=True)
class FreeIbElement:
    """A pearl tree together with a label for every vertex.

    The pearl carries a generator, every other vertex an operad
    element; labels are stored sorted by vertex path."""

    pearl_tree: PearlTree
    labels: Labels

    def __post_init__(self):
        paths = tuple(sorted(vertex_paths(self.pearl_tree.stree.shape)))
        if tuple(v for v, _ in self.labels) != paths:
            raise ValueError("labels do not cover the vertices exactly")

    @property
    def profile(self) -> Profile:
        return self.pearl_tree.stree.profile


@dataclass(frozen=True)
class FreeBimodElement:
    """A section tree together with a label for every vertex."""

    section_tree: SectionTree
    labels: Labels

    def __post_init__(self):
        paths = tuple(sorted(vertex_paths(self.section_tree.stree.shape)))
        if tuple(v for v, _ in self.labels) != paths:
            raise ValueError("labels do not cover the vertices exactly")

    @property
    def profile(self) -> Profile:
        return self.section_tree.stree.profile


def ib_element_code(x: FreeIbElement) -> str:
    """Serialization: tree code with the pearl marked, then the label
    list in vertex-path order."""
    tree = stree_code(x.pearl_tree.stree, [x.pearl_tree.pearl])
    return tree + "@" + json.dumps([l for _, l in x.labels], separators=(",", ":"))


def bimod_element_code(x: FreeBimodElement) -> str:
    tree = stree_code(x.section_tree.stree, x.section_tree.pearls)
    return tree + "@" + json.dumps([l for _, l in x.labels], separators=(",", ":"))


def _is_unit_label(o: FiniteOperad, p: Profile, label: str) -> bool:
    return (
        p.arity == 1
        and p.inputs[0] == p.output
        and o.units.get(p.output) == label
    )


def _require_compatible(o: FiniteOperad, m: FiniteSSequence) -> None:
    if set(o.carrier.colours) != set(m.colours):
        raise ValueError("generator sequence and operad colour sets differ")
    if o.carrier.max_arity != m.max_arity:
        raise ValueError("generator sequence and operad arity bounds differ")
    # An arity-zero label absorbs an input slot, letting a composed
    # vertex outgrow the arity bound inside a profile that still fits;
    # the bounded action tables then cannot be total.
    for p in o.carrier.profiles():
        if p.arity == 0:
            raise ValueError("free constructions require an arity-positive operad")
    for p in m.profiles():
        if p.arity == 0:
            raise ValueError("free constructions require arity-positive generators")


# ---------------------------------------------------------------------------
# structured views
#
# A pearl tree has an optional root vertex below the pearl and an
# optional corolla over each pearl input; a section tree has an
# optional root vertex whose children are all pearls, each again with
# optional corollas.  Actions and folds work on these views and the
# tree is rebuilt afterwards.


def _ib_parts(x: FreeIbElement):
    st = x.pearl_tree.stree
    labels = dict(x.labels)
    verts = set(vertex_paths(st.shape))
    ppath = x.pearl_tree.pearl
    pearl = (vertex_profile(st, ppath), labels[ppath])
    if ppath == ():
        root = None
    else:
        root = (vertex_profile(st, ()), labels[()], ppath[0] + 1)
    above = []
    for j in range(pearl[0].arity):
        ch = ppath + (j,)
        above.append((vertex_profile(st, ch), labels[ch]) if ch in verts else None)
    return root, pearl, tuple(above)


def _pearl_block_shape(pearl_arity: int, above):
    shape = corolla(pearl_arity)
    for j in reversed(range(pearl_arity)):
        if above[j] is not None:
            shape = graft(shape, j + 1, corolla(above[j][0].arity))
    return shape


def _ib_build(o: FiniteOperad, root, pearl, above) -> FreeIbElement:
    pp, plabel = pearl
    above = tuple(
        None if a is not None and _is_unit_label(o, a[0], a[1]) else a for a in above
    )
    if root is not None and _is_unit_label(o, root[0], root[1]):
        root = None
    shape = _pearl_block_shape(pp.arity, above)
    cmap: dict[Path, Colour] = {}
    labels: dict[Path, str] = {}
    if root is None:
        base: Path = ()
    else:
        rp, rlabel, b = root
        shape = graft(corolla(rp.arity), b, shape)
        base = (b - 1,)
        cmap[()] = rp.output
        labels[()] = rlabel
        for s in range(rp.arity):
            if s != b - 1:
                cmap[(s,)] = rp.inputs[s]
    cmap[base] = pp.output
    labels[base] = plabel
    for j in range(pp.arity):
        ch = base + (j,)
        cmap[ch] = pp.inputs[j]
        if above[j] is not None:
            ap, albl = above[j]
            labels[ch] = albl
            for l in range(ap.arity):
                cmap[ch + (l,)] = ap.inputs[l]
    st = stree(shape, cmap)
    return FreeIbElement(PearlTree(st, base), tuple(sorted(labels.items())))


def ib_unit(o: FiniteOperad, p: Profile, a: str) -> FreeIbElement:
    """The unit inclusion sends a generator to the bare pearl corolla."""
    return _ib_build(o, None, (p, a), (None,) * p.arity)


def _bimod_parts(x: FreeBimodElement):
    st = x.section_tree.stree
    labels = dict(x.labels)
    verts = set(vertex_paths(st.shape))
    pearl_set = set(x.section_tree.pearls)
    if pearl_set == {()}:
        root = None
        order = [()]
    else:
        root = (vertex_profile(st, ()), labels[()])
        order = sorted(pearl_set)
    pearls = []
    for ppath in order:
        pp = vertex_profile(st, ppath)
        above = []
        for j in range(pp.arity):
            ch = ppath + (j,)
            above.append((vertex_profile(st, ch), labels[ch]) if ch in verts else None)
        pearls.append((pp, labels[ppath], tuple(above)))
    return root, tuple(pearls)


def _bimod_build(o: FiniteOperad, root, pearls) -> FreeBimodElement:
    pearls = tuple(
        (
            pp,
            plabel,
            tuple(
                None if a is not None and _is_unit_label(o, a[0], a[1]) else a
                for a in above
            ),
        )
        for pp, plabel, above in pearls
    )
    if root is not None and _is_unit_label(o, root[0], root[1]):
        root = None
    cmap: dict[Path, Colour] = {}
    labels: dict[Path, str] = {}
    if root is None:
        if len(pearls) != 1:
            raise ValueError("a rootless section tree has exactly one pearl")
        bases: list[Path] = [()]
        pp0, _, above0 = pearls[0]
        shape = _pearl_block_shape(pp0.arity, above0)
    else:
        rp, rlabel = root
        if rp.arity != len(pearls):
            raise ValueError("root arity and pearl count differ")
        shape = corolla(rp.arity)
        for k in reversed(range(rp.arity)):
            pp, _, above = pearls[k]
            shape = graft(shape, k + 1, _pearl_block_shape(pp.arity, above))
        bases = [(k,) for k in range(rp.arity)]
        cmap[()] = rp.output
        labels[()] = rlabel
    for base, (pp, plabel, above) in zip(bases, pearls):
        cmap[base] = pp.output
        labels[base] = plabel
        for j in range(pp.arity):
            ch = base + (j,)
            cmap[ch] = pp.inputs[j]
            if above[j] is not None:
                ap, albl = above[j]
                labels[ch] = albl
                for l in range(ap.arity):
                    cmap[ch + (l,)] = ap.inputs[l]
    st = stree(shape, cmap)
    return FreeBimodElement(SectionTree(st, tuple(bases)), tuple(sorted(labels.items())))


def bimod_unit(o: FiniteOperad, p: Profile, a: str) -> FreeBimodElement:
    return _bimod_build(o, None, ((p, a, (None,) * p.arity),))


# ---------------------------------------------------------------------------
# enumeration


def free_ib_elements(
    o: FiniteOperad, m: FiniteSSequence, profile: Profile
) -> tuple[FreeIbElement, ...]:
    """All normal forms of the given profile, sorted by element code."""
    _require_compatible(o, m)
    bound = o.carrier.max_arity
    arities = _label_arities(o)
    out: dict[str, FreeIbElement] = {}
    for pt in enumerate_pearl_trees(
        profile,
        bound,
        colours=o.carrier.colours,
        top_arities=arities,
        below_arities=[a for a in arities if a >= 1],
    ):
        for el in _labellings(o, m, pt.stree, (pt.pearl,), lambda lab: FreeIbElement(pt, lab)):
            out[ib_element_code(el)] = el
    return tuple(out[c] for c in sorted(out))


def free_bimod_elements(
    o: FiniteOperad, m: FiniteSSequence, profile: Profile
) -> tuple[FreeBimodElement, ...]:
    _require_compatible(o, m)
    bound = o.carrier.max_arity
    arities = _label_arities(o)
    out: dict[str, FreeBimodElement] = {}
    for st_ in enumerate_section_trees(
        profile,
        bound,
        colours=o.carrier.colours,
        top_arities=arities,
        root_arities=[a for a in arities if a >= 1],
    ):
        for el in _labellings(
            o, m, st_.stree, st_.pearls, lambda lab: FreeBimodElement(st_, lab)
        ):
            out[bimod_element_code(el)] = el
    return tuple(out[c] for c in sorted(out))


def _label_arities(o: FiniteOperad) -> tuple[int, ...]:
    """Arities at which the operad has a non-unit element; only these
    can appear on non-pearl vertices of a normal form."""
    out = set()
    for p in o.carrier.profiles():
        if any(not _is_unit_label(o, p, e) for e in o.carrier.elements(p)):
            out.add(p.arity)
    return tuple(sorted(out))


def _labellings(o, m, st, pearl_paths, build):
    pearl_set = set(pearl_paths)
    verts = sorted(vertex_paths(st.shape))
    pools = []
    for v in verts:
        vp = vertex_profile(st, v)
        if v in pearl_set:
            opts = m.elements(vp)
        else:
            opts = tuple(
                e
                for e in o.carrier.elements(vp)
                if not _is_unit_label(o, vp, e)
            )
        if not opts:
            return
        pools.append(opts)
    for combo in product(*pools):
        yield build(tuple(zip(verts, combo)))


# ---------------------------------------------------------------------------
# actions


def _locate_block(widths: Sequence[int], pos: int) -> tuple[int, int]:
    """Which block a 1-based global input lands in, and where inside."""
    for j, w in enumerate(widths):
        if pos <= w:
            return j, pos
        pos -= w
    raise ValueError("input index out of range")


def ib_right_action(
    o: FiniteOperad, x: FreeIbElement, i: int, yp: Profile, y: str
) -> FreeIbElement:
    """Graft the corolla of y onto input i and contract unless the new
    edge starts at the pearl."""
    root, pearl, above = _ib_parts(x)
    xp = x.profile
    if not 1 <= i <= xp.arity:
        raise ValueError(f"input index {i} out of range for {xp!r}")
    if xp.inputs[i - 1] != yp.output:
        raise ValueError(
            f"colour mismatch: input {i} of {xp!r} vs output of {yp!r}"
        )
    pos = i
    if root is not None:
        rp, rlabel, b = root
        if pos <= b - 1:
            np_, nl = o.comp(rp, rlabel, pos, yp, y)
            return _ib_build(o, (np_, nl, b + yp.arity - 1), pearl, above)
        pos -= b - 1
        pearl_width = sum(a[0].arity if a else 1 for a in above)
        if pos > pearl_width:
            slot = b + pos - pearl_width
            np_, nl = o.comp(rp, rlabel, slot, yp, y)
            return _ib_build(o, (np_, nl, b), pearl, above)
    j, local = _locate_block([a[0].arity if a else 1 for a in above], pos)
    new_above = list(above)
    if above[j] is None:
        new_above[j] = (yp, y)
    else:
        ap, albl = above[j]
        np_, nl = o.comp(ap, albl, local, yp, y)
        new_above[j] = (np_, nl)
    return _ib_build(o, root, pearl, tuple(new_above))


def ib_left_action(
    o: FiniteOperad, yp: Profile, y: str, i: int, x: FreeIbElement
) -> FreeIbElement:
    """Graft x into input i of the corolla of y; the old root vertex,
    if any, is composed into y."""
    root, pearl, above = _ib_parts(x)
    if not 1 <= i <= yp.arity:
        raise ValueError(f"input index {i} out of range for {yp!r}")
    if yp.inputs[i - 1] != x.profile.output:
        raise ValueError(
            f"colour mismatch: input {i} of {yp!r} vs output of {x.profile!r}"
        )
    if root is None:
        return _ib_build(o, (yp, y, i), pearl, above)
    rp, rlabel, b = root
    np_, nl = o.comp(yp, y, i, rp, rlabel)
    return _ib_build(o, (np_, nl, i - 1 + b), pearl, above)


def bimod_right_action(
    o: FiniteOperad, x: FreeBimodElement, i: int, yp: Profile, y: str
) -> FreeBimodElement:
    root, pearls = _bimod_parts(x)
    xp = x.profile
    if not 1 <= i <= xp.arity:
        raise ValueError(f"input index {i} out of range for {xp!r}")
    if xp.inputs[i - 1] != yp.output:
        raise ValueError(
            f"colour mismatch: input {i} of {xp!r} vs output of {yp!r}"
        )
    widths = [
        sum(a[0].arity if a else 1 for a in above) for _, _, above in pearls
    ]
    k, pos = _locate_block(widths, i)
    pp, plabel, above = pearls[k]
    j, local = _locate_block([a[0].arity if a else 1 for a in above], pos)
    new_above = list(above)
    if above[j] is None:
        new_above[j] = (yp, y)
    else:
        ap, albl = above[j]
        np_, nl = o.comp(ap, albl, local, yp, y)
        new_above[j] = (np_, nl)
    new_pearls = list(pearls)
    new_pearls[k] = (pp, plabel, tuple(new_above))
    return _bimod_build(o, root, tuple(new_pearls))


def bimod_left_action(
    o: FiniteOperad, yp: Profile, y: str, xs: Sequence[FreeBimodElement]
) -> FreeBimodElement:
    """Full left action: graft each argument into its slot and compose
    every non-pearl argument root into y, smallest arity first."""
    if len(xs) != yp.arity:
        raise ValueError("argument count does not match the operad arity")
    inserts = []
    pearls: list = []
    for s, x in enumerate(xs, start=1):
        if yp.inputs[s - 1] != x.profile.output:
            raise ValueError(
                f"colour mismatch: input {s} of {yp!r} vs output of {x.profile!r}"
            )
        root, xpearls = _bimod_parts(x)
        if root is not None:
            inserts.append((root[0].arity, s, root[0], root[1]))
        pearls.extend(xpearls)
    curp, cur = yp, y
    done: list[tuple[int, int]] = []  # (original slot, arity) already inserted
    for _, s, rp, rlabel in sorted(inserts, key=lambda t: (t[0], t[1])):
        idx = s + sum(ar - 1 for s2, ar in done if s2 < s)
        curp, cur = o.comp(curp, cur, idx, rp, rlabel)
        done.append((s, rp.arity))
    return _bimod_build(o, (curp, cur), tuple(pearls))


# ---------------------------------------------------------------------------
# table assembly


def free_ib_infbimodule(
    o: FiniteOperad, m: FiniteSSequence
) -> tuple[InfBimoduleTables, SSeqMap, dict[str, FreeIbElement]]:
    """The free infinitesimal bimodule on m, its unit inclusion, and
    the code-to-element registry."""
    _require_compatible(o, m)
    bound = o.carrier.max_arity
    registry: dict[str, FreeIbElement] = {}
    table: dict[Profile, tuple[str, ...]] = {}
    for p in enumerate_profiles(o.carrier.colours, bound):
        els = free_ib_elements(o, m, p)
        codes = []
        for el in els:
            code = ib_element_code(el)
            registry[code] = el
            codes.append(code)
        if codes:
            table[p] = tuple(codes)
    carrier = FiniteSSequence(o.carrier.colours, bound, table)
    left: dict = {}
    right: dict = {}
    for p1 in o.carrier.profiles():
        for i in range(1, p1.arity + 1):
            for pa in carrier.profiles():
                if pa.output != p1.inputs[i - 1]:
                    continue
                if p1.arity + pa.arity - 1 > bound:
                    continue
                for x in o.carrier.elements(p1):
                    for code in carrier.elements(pa):
                        res = ib_left_action(o, p1, x, i, registry[code])
                        left[(p1, x, i, pa, code)] = ib_element_code(res)
    for pa in carrier.profiles():
        for i in range(1, pa.arity + 1):
            for p2 in o.carrier.profiles():
                if p2.output != pa.inputs[i - 1]:
                    continue
                if pa.arity + p2.arity - 1 > bound:
                    continue
                for code in carrier.elements(pa):
                    for y in o.carrier.elements(p2):
                        res = ib_right_action(o, registry[code], i, p2, y)
                        right[(pa, code, i, p2, y)] = ib_element_code(res)
    tables = InfBimoduleTables(o, carrier, left, right)
    unit = SSeqMap(
        m,
        carrier,
        {
            p: {a: ib_element_code(ib_unit(o, p, a)) for a in m.elements(p)}
            for p in m.profiles()
        },
    )
    return tables, unit, registry


def free_bimodule(
    o: FiniteOperad, m: FiniteSSequence
) -> tuple[BimoduleTables, SSeqMap, dict[str, FreeBimodElement]]:
    """The free bimodule on m, its unit inclusion, and the registry."""
    _require_compatible(o, m)
    bound = o.carrier.max_arity
    registry: dict[str, FreeBimodElement] = {}
    table: dict[Profile, tuple[str, ...]] = {}
    for p in enumerate_profiles(o.carrier.colours, bound):
        els = free_bimod_elements(o, m, p)
        codes = []
        for el in els:
            code = bimod_element_code(el)
            registry[code] = el
            codes.append(code)
        if codes:
            table[p] = tuple(codes)
    carrier = FiniteSSequence(o.carrier.colours, bound, table)
    gamma: dict = {}
    right: dict = {}
    for p1 in o.carrier.profiles():
        for args in _argument_tuples(carrier, p1.inputs, bound):
            xs = [registry[code] for _, code in args]
            for x in o.carrier.elements(p1):
                res = bimod_left_action(o, p1, x, xs)
                gamma[(p1, x, args)] = bimod_element_code(res)
    for pa in carrier.profiles():
        for i in range(1, pa.arity + 1):
            for p2 in o.carrier.profiles():
                if p2.output != pa.inputs[i - 1]:
                    continue
                if pa.arity + p2.arity - 1 > bound:
                    continue
                for code in carrier.elements(pa):
                    for y in o.carrier.elements(p2):
                        res = bimod_right_action(o, registry[code], i, p2, y)
                        right[(pa, code, i, p2, y)] = bimod_element_code(res)
    tables = BimoduleTables(o, carrier, gamma, right)
    unit = SSeqMap(
        m,
        carrier,
        {
            p: {a: bimod_element_code(bimod_unit(o, p, a)) for a in m.elements(p)}
            for p in m.profiles()
        },
    )
    return tables, unit, registry


# ---------------------------------------------------------------------------
# folding


def ib_fold(
    h: SSeqMap,
    n: InfBimoduleTables,
    x: FreeIbElement,
    order: "Sequence[Path] | None" = None,
) -> str:
    """Evaluate x in n along h by cutting one corolla at a time.

    order lists the non-pearl vertex paths in cut order (innermost
    composition first); by default corollas over the pearl go smallest
    arity first and the root vertex last, which keeps intermediate
    arities within the bound whenever the whole evaluation fits."""
    root, pearl, above = _ib_parts(x)
    ppath = x.pearl_tree.pearl
    if order is None:
        slots = sorted(
            (j for j in range(len(above)) if above[j] is not None),
            key=lambda j: (above[j][0].arity, j),
        )
        order = [ppath + (j,) for j in slots]
        if root is not None:
            order = order + [()]
    pp, plabel = pearl
    curp, cur = pp, h.apply(pp, plabel)
    widths = [1] * pp.arity
    offset = 0
    root_done = False
    for v in order:
        if v == ():
            if root is None or root_done:
                raise ValueError("() is not a non-pearl vertex of the element")
            rp, rlabel, b = root
            cur = n.left_inf[(rp, rlabel, b, curp, cur)]
            curp = splice_profile(rp, b, curp)
            offset = b - 1
            root_done = True
            continue
        if v[:-1] != ppath or above[v[-1]] is None:
            raise ValueError(f"{v!r} is not a non-pearl vertex of the element")
        j = v[-1]
        ap, albl = above[j]
        idx = offset + sum(widths[:j]) + 1
        cur = n.right_inf[(curp, cur, idx, ap, albl)]
        curp = splice_profile(curp, idx, ap)
        widths[j] = ap.arity
    if (root is not None) != root_done:
        raise ValueError("cut order does not cover the vertices exactly")
    if curp != x.profile:
        raise ValueError("cut order does not cover the vertices exactly")
    return cur


def bimod_fold(
    h: SSeqMap,
    n: BimoduleTables,
    x: FreeBimodElement,
    order: "Sequence[Path] | None" = None,
) -> str:
    """Evaluate x in n along h: the root acts on the folded pearls via
    the full left action, then the corollas are composed back in."""
    root, pearls = _bimod_parts(x)
    bases = x.section_tree.pearls if root is not None else ((),)
    if order is None:
        order = sorted(
            (
                base + (j,)
                for base, (_, _, above) in zip(bases, pearls)
                for j in range(len(above))
                if above[j] is not None
            ),
            key=lambda v: (_above_of(pearls, bases, v)[0].arity, v),
        )
    if root is None:
        pp, plabel, _ = pearls[0]
        curp, cur = pp, h.apply(pp, plabel)
    else:
        rp, rlabel = root
        args = tuple((pp, h.apply(pp, plabel)) for pp, plabel, _ in pearls)
        cur = n.gamma_left[(rp, rlabel, args)]
        curp = Profile(tuple(c for pp, _, _ in pearls for c in pp.inputs), rp.output)
    widths = {
        base: [1] * pp.arity for base, (pp, _, _) in zip(bases, pearls)
    }
    base_order = list(widths)
    for v in order:
        base, j = v[:-1], v[-1]
        ap, albl = _above_of(pearls, bases, v)
        idx = 1 + sum(
            sum(widths[b2]) for b2 in base_order[: base_order.index(base)]
        ) + sum(widths[base][:j])
        cur = n.right_act[(curp, cur, idx, ap, albl)]
        curp = splice_profile(curp, idx, ap)
        widths[base][j] = ap.arity
    if curp != x.profile:
        raise ValueError("cut order does not cover the vertices exactly")
    return cur


def _above_of(pearls, bases, v):
    base, j = v[:-1], v[-1]
    for b2, (_, _, above) in zip(bases, pearls):
        if b2 == base:
            entry = above[j]
            if entry is None:
                raise ValueError(f"{v!r} is not a non-pearl vertex of the element")
            return entry
    raise ValueError(f"{v!r} is not a non-pearl vertex of the element")


def ib_fold_map(h: SSeqMap, n: InfBimoduleTables, free: InfBimoduleTables,
                registry: dict[str, FreeIbElement]) -> SSeqMap:
    """The induced map on the whole free carrier."""
    return SSeqMap(
        free.carrier,
        n.carrier,
        {
            p: {code: ib_fold(h, n, registry[code]) for code in free.carrier.elements(p)}
            for p in free.carrier.profiles()
        },
    )


def bimod_fold_map(h: SSeqMap, n: BimoduleTables, free: BimoduleTables,
                   registry: dict[str, FreeBimodElement]) -> SSeqMap:
    return SSeqMap(
        free.carrier,
        n.carrier,
        {
            p: {code: bimod_fold(h, n, registry[code]) for code in free.carrier.elements(p)}
            for p in free.carrier.profiles()
        },
    )


# ---------------------------------------------------------------------------
# adjunction


@dataclass(frozen=True)
class AdjunctionReport:
    passed: bool
    sequence_maps: int
    module_maps: int
    brute_forced: bool
    violations: tuple[str, ...]


def _all_sequence_maps(m: FiniteSSequence, target: FiniteSSequence, cap: int):
    pools = []
    total = 1
    for p in m.profiles():
        tgt = target.elements(p)
        for a in m.elements(p):
            total *= len(tgt)
            if total > cap:
                raise ValueError("too many sequence maps to enumerate")
            pools.append((p, a, tgt))
    for combo in product(*(tgt for _, _, tgt in pools)):
        maps: dict[Profile, dict[str, str]] = {p: {} for p in m.profiles()}
        for (p, a, _), v in zip(pools, combo):
            maps[p][a] = v
        yield SSeqMap(m, target, maps)


def adjunction_check(
    o: FiniteOperad,
    m: FiniteSSequence,
    n: "InfBimoduleTables | BimoduleTables",
    cap: int = 100000,
    brute_cap: int = 100000,
) -> AdjunctionReport:
    """Verify that folding is a bijection from sequence maps out of m
    to module maps out of the free object on m.

    Injectivity and the triangle identity are checked element by
    element; surjectivity follows because folding the unit inclusion
    into the free object itself reproduces every element, so a module
    map is determined by its restriction to the generators.  When the
    raw candidate space is small the map count is also brute-forced."""
    infinitesimal = isinstance(n, InfBimoduleTables)
    if infinitesimal:
        free, unit, registry = free_ib_infbimodule(o, m)
        fold_map = lambda h: ib_fold_map(h, n, free, registry)
        is_map = lambda f: is_infbimodule_map(free, n, f)
    else:
        free, unit, registry = free_bimodule(o, m)
        fold_map = lambda h: bimod_fold_map(h, n, free, registry)
        is_map = lambda f: is_bimodule_map(free, n, f)
    violations: list[str] = []

    identity = SSeqMap(
        free.carrier,
        free.carrier,
        {
            p: {c: c for c in free.carrier.elements(p)}
            for p in free.carrier.profiles()
        },
    )
    if infinitesimal:
        tri = ib_fold_map(unit, free, free, registry)
    else:
        tri = bimod_fold_map(unit, free, free, registry)
    if tri.maps != identity.maps:
        violations.append("folding the unit inclusion is not the identity")

    hs = list(_all_sequence_maps(m, n.carrier, cap))
    folds = []
    seen = set()
    for h in hs:
        phi = fold_map(h)
        report = is_map(phi)
        if not report.passed:
            violations.append(
                f"fold of a sequence map is not a module map: {report.violations[0]}"
            )
            continue
        for p in m.profiles():
            for a in m.elements(p):
                if phi.apply(p, unit.apply(p, a)) != h.apply(p, a):
                    violations.append(
                        f"fold does not restrict to the original map at {p!r} {a!r}"
                    )
        key = tuple(
            (p, tuple(sorted(phi.maps[p].items()))) for p in sorted(phi.maps, key=repr)
        )
        if key in seen:
            violations.append("two distinct sequence maps fold to the same module map")
        seen.add(key)
        folds.append(key)

    brute = False
    module_maps = len(folds) if not violations else -1
    size = 1
    for p in free.carrier.profiles():
        size *= len(n.carrier.elements(p)) ** len(free.carrier.elements(p))
        if size > brute_cap:
            break
    if size <= brute_cap:
        brute = True
        count = 0
        found = set()
        for f in _all_sequence_maps(free.carrier, n.carrier, brute_cap):
            if is_map(f).passed:
                count += 1
                found.add(
                    tuple(
                        (p, tuple(sorted(f.maps[p].items())))
                        for p in sorted(f.maps, key=repr)
                    )
                )
        module_maps = count
        if count != len(hs):
            violations.append(
                f"{count} module maps but {len(hs)} sequence maps"
            )
        elif found != set(folds):
            violations.append("brute-forced module maps differ from the folds")
    return AdjunctionReport(
        passed=not violations,
        sequence_maps=len(hs),
        module_maps=module_maps if module_maps >= 0 else len(folds),
        brute_forced=brute,
        violations=tuple(sorted(violations)),
    )
