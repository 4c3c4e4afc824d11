"""Acceptance gate: one timed test per advertised guarantee.

Each test exercises a guarantee at its stated size, asserts the result,
and prints a single pass line with the elapsed time against the budget
(visible with -s).  A budget overrun fails the test.
"""

import random
import time
from itertools import permutations

import pytest

from operadkit.seqcore import (
    CLOSED,
    OPEN,
    FiniteSSequence,
    SSeqMap,
    profile_closed,
    profile_open,
)
from operadkit.algebra import (
    BimoduleTables,
    builtin_act,
    builtin_as,
    check_assumption_13,
    check_operad_axioms,
    identity_witness,
    induced_bimodule,
    induced_infbimodule,
    operad_self_bimodule,
    x_construction,
)
from operadkit.cosimp import (
    _box_coface,
    _box_relations,
    _box_triples,
    box_product,
    box_quotient,
    check_box_module,
    check_box_monoid,
    check_semicosimplicial,
    constant_point,
    derive_monoid_from_bimodule,
    derive_pair_from_infbimodule,
    infbimodule_from_pair,
    loops_example,
)
from operadkit.corpus import (
    restrict_witness_positive,
    seeded_act_instances,
    seeded_as_instances,
    seeded_free_pairs,
)
from operadkit.freecons import (
    _bimod_parts,
    _ib_parts,
    adjunction_check,
    bimod_fold,
    free_bimodule,
    free_ib_infbimodule,
    ib_fold,
)
from operadkit.trees import count_ptrees, enumerate_trees
from operadkit.cells import (
    all_identity_groups,
    check_point_identities,
    wa_face_poset,
)
from operadkit import cli

from oracles import (
    component_classes,
    f_vector_oracle,
    pearl_count_oracle,
    schroeder,
    section_count_oracle,
    tr_oracle,
    trees_any_up_to_vertices,
)


def _done(num: int, budget: float, started: float, detail: str) -> None:
    elapsed = time.perf_counter() - started
    print(f"criterion {num:2d} PASS in {elapsed:6.2f}s (budget {budget:g}s): {detail}")
    assert elapsed < budget, f"criterion {num} took {elapsed:.2f}s, budget {budget:g}s"


def test_criterion_01_builtin_validity():
    started = time.perf_counter()
    for unital in (True, False):
        assert check_operad_axioms(builtin_act(unital, 6)).passed
    for strict in (True, False):
        assert check_operad_axioms(builtin_as(strict, 6)).passed
    for unital in (True, False):
        act = builtin_act(unital, 6)
        lo = 0 if unital else 1
        expected = set()
        for n in range(1, 7):
            pn, po = profile_closed(n), profile_open(n)
            for m in range(lo, 7):
                if n + m - 1 > 6:
                    continue
                qm = profile_closed(m)
                for i in range(1, n + 1):
                    expected.add((pn, "*", i, qm, "*"))
                for i in range(1, n):
                    expected.add((po, "*", i, qm, "*"))
            for m in range(max(lo, 1), 7):
                if n + m - 1 > 6:
                    continue
                expected.add((po, "*", n, profile_open(m), "*"))
        assert set(act.compose) == expected
        assert all(v == "*" for v in act.compose.values())
    _done(1, 1.0, started,
          "four builtins pass axioms at bound 6; action relations hold table-for-table")


def test_criterion_02_infinitesimal_bimodules_to_pairs():
    started = time.perf_counter()
    insts = seeded_act_instances(202, 25, unital=False)
    assert len(insts) == 25
    for inst in insts:
        m = induced_infbimodule(inst.witness)
        pair = derive_pair_from_infbimodule(m)
        assert check_semicosimplicial(pair.closed_part).passed, inst.name
        assert check_semicosimplicial(pair.open_part).passed, inst.name
        for n in range(pair.open_part.max_level):
            for i in range(n + 2):
                for x in pair.closed_part.levels[n]:
                    lhs = pair.h[n + 1][pair.closed_part.coface(n, i, x)]
                    rhs = pair.open_part.coface(n, i, pair.h[n][x])
                    assert lhs == rhs, (inst.name, n, i, x)
        back = infbimodule_from_pair(pair)
        assert back.over == m.over, inst.name
        assert back.carrier == m.carrier, inst.name
        assert back.left_inf == m.left_inf, inst.name
        assert back.right_inf == m.right_inf, inst.name
    _done(2, 30.0, started,
          "25 induced infinitesimal bimodules: derived pairs check out and round-trip")


def test_criterion_03_bimodules_to_box_monoids():
    started = time.perf_counter()
    insts = seeded_act_instances(303, 25, unital=True)
    assert len(insts) == 25
    for inst in insts:
        bm = induced_bimodule(restrict_witness_positive(inst.witness))
        mon, module, _ = derive_monoid_from_bimodule(bm, inst.witness.underlying)
        assert check_box_monoid(mon).passed, inst.name
        assert check_box_module(module).passed, inst.name
    mon, module, _ = loops_example(["*", "u", "v"], ["*", "u"], "*", 4)
    assert check_box_monoid(mon).passed
    assert check_box_module(module).passed
    _done(3, 60.0, started,
          "25 derived box monoids and modules pass, plus the loops example at level 4")


def _unit_laws_with_cofaces(x):
    """Both unit laws for the box product against x: level-wise bijections
    that commute with every coface."""
    e = constant_point(x.max_level)
    for unit_on_left in (True, False):
        first, second = (e, x) if unit_on_left else (x, e)
        box, classes = box_quotient(first, second)
        to_x = []
        for m in range(x.max_level + 1):
            level_map = {}
            for t, rep in classes[m].items():
                p, a, b = t
                if unit_on_left and p == 0:
                    val = b
                elif not unit_on_left and p == m:
                    val = a
                else:
                    continue
                assert rep not in level_map or level_map[rep] == val
                level_map[rep] = val
            assert sorted(level_map.values()) == sorted(x.levels[m])
            assert len(level_map) == len(box.levels[m])
            to_x.append(level_map)
        for m in range(x.max_level):
            for t, rep in classes[m].items():
                for i in range(m + 2):
                    img = classes[m + 1][_box_coface(first, second, t, m, i)]
                    assert to_x[m + 1][img] == x.coface(m, i, to_x[m][rep])


def test_criterion_04_box_product_laws():
    started = time.perf_counter()
    rng = random.Random(404)
    labels = ["*", "u", "v"]
    cache = {}

    def seeded_input(level):
        key = (rng.randrange(2, 4), rng.randrange(1, 3), rng.randrange(2), level)
        if key not in cache:
            nx, na, part, lv = key
            # the module sits one level below the monoid it acts under
            mon, module, _ = loops_example(labels[:nx], labels[:na], "*", lv + part)
            cache[key] = mon.x if part == 0 else module.x
        return cache[key]

    for _ in range(10):
        x = seeded_input(5)
        assert x.max_level == 5
        _unit_laws_with_cofaces(x)
    for _ in range(10):
        x, y, z = (seeded_input(3) for _ in range(3))
        lhs = box_product(box_product(x, y), z)
        rhs = box_product(x, box_product(y, z))
        assert [len(l) for l in lhs.levels] == [len(l) for l in rhs.levels]
    e = constant_point(5)
    box, classes = box_quotient(e, e)
    for m in range(6):
        assert len(box.levels[m]) == 1
        oracle = component_classes(_box_triples(e, e, m), list(_box_relations(e, e, m)))
        assert len(oracle) == 1
        mine = {}
        for t, rep in classes[m].items():
            mine.setdefault(rep, set()).add(t)
        assert set(map(frozenset, mine.values())) == set(map(frozenset, oracle))
        for rep, members in mine.items():
            assert rep == min(members)
    _done(4, 30.0, started,
          "unit laws at level 5 for 10 seeded inputs; 10 associativity triples; point box point")


ACT3 = builtin_act(False, 3)
M_TWO = FiniteSSequence(
    (CLOSED, OPEN), 3, {profile_closed(1): ("g",), profile_open(1): ("u",)}
)


def test_criterion_05_free_construction_adjunction():
    started = time.perf_counter()
    pairs = seeded_free_pairs(505, 10)
    assert len(pairs) == 10
    for pr in pairs:
        rep = adjunction_check(ACT3, pr.m, induced_infbimodule(pr.witness))
        assert rep.passed, (pr.name, rep.violations[:2])
        assert rep.sequence_maps == rep.module_maps
        rep2 = adjunction_check(ACT3, pr.m, induced_bimodule(pr.witness))
        assert rep2.passed, (pr.name, rep2.violations[:2])
        assert rep2.sequence_maps == rep2.module_maps
    free, unit, registry = free_ib_infbimodule(ACT3, M_TWO)
    folds = 0
    for code, el in registry.items():
        root, pearl, above = _ib_parts(el)
        verts = [el.pearl_tree.pearl + (j,) for j, a in enumerate(above) if a is not None]
        if root is not None:
            verts.append(())
        for perm in permutations(verts):
            assert ib_fold(unit, free, el, order=list(perm)) == code
            folds += 1
    assert folds > len(registry)
    bfree, bunit, bregistry = free_bimodule(ACT3, M_TWO)
    for code, el in bregistry.items():
        root, pearls = _bimod_parts(el)
        bases = el.section_tree.pearls if root is not None else ((),)
        verts = [
            base + (j,)
            for base, (_, _, above) in zip(bases, pearls)
            for j, a in enumerate(above)
            if a is not None
        ]
        for perm in permutations(verts):
            assert bimod_fold(bunit, bfree, el, order=list(perm)) == code
    _done(5, 120.0, started,
          "10 seeded adjunction checks for both free constructions; folds cut-order independent")


def test_criterion_06_tree_counts():
    started = time.perf_counter()
    for n in range(1, 6):
        assert len(enumerate_trees(n, "min_arity_2")) == schroeder(n)
        assert len(enumerate_trees(n, "c_only")) == schroeder(n)
        assert len(enumerate_trees(n, "tree_n_o")) == schroeder(n)
        for mv in range(1, 6):
            got = len(enumerate_trees(n, "all", max_vertices=mv))
            assert got == trees_any_up_to_vertices(n, mv), (n, mv)
        for ma in (2, 3):
            got = len(enumerate_trees(n, "pearl", profile=profile_closed(n), max_arity=ma))
            assert got == pearl_count_oracle(n, ma, 1), (n, ma)
            got = len(enumerate_trees(n, "section", profile=profile_closed(n), max_arity=ma))
            assert got == section_count_oracle(n, ma, 1), (n, ma)
    for m in range(0, 6):
        for n in range(0, 6):
            assert count_ptrees(m, n) == tr_oracle(m, n), (m, n)
    _done(6, 10.0, started,
          "every enumeration constraint matches its recurrence at n <= 5; pearl table matches oracle")


def test_criterion_07_polytope_face_posets():
    started = time.perf_counter()
    assert wa_face_poset(4, CLOSED).f_vector() == (5, 5, 1)
    assert wa_face_poset(5, CLOSED).f_vector() == (14, 21, 9, 1)
    for n in range(2, 7):
        assert wa_face_poset(n, CLOSED).f_vector() == f_vector_oracle(n), n
        for colour in (CLOSED, OPEN):
            assert wa_face_poset(n, colour).euler_characteristic() == 1, (n, colour)
    _done(7, 10.0, started,
          "frozen f-vectors at n = 4, 5; Euler characteristic 1 for n = 2..6, both colours")


def test_criterion_08_exact_point_identities():
    started = time.perf_counter()
    groups = all_identity_groups()
    assert set(groups) == {"simplex", "cube", "tilde", "quotient"}
    for name in sorted(groups):
        rep = check_point_identities(groups[name], 808, 1000)
        assert rep.passed, (name, [c for c in rep.checks if c[1]])
    _done(8, 10.0, started,
          "all structure-map identity groups exact at 1000 seeded rational points each")


def test_criterion_09_x_construction():
    started = time.perf_counter()
    for bound in (3, 6):
        As = builtin_as(False, bound)
        beta = SSeqMap(
            As.carrier, As.carrier, {p: {"*": "*"} for p in As.carrier.profiles()}
        )
        X, eta = x_construction(As, operad_self_bimodule(As), identity_witness(As), beta)
        assert X == builtin_act(True, bound)
        assert eta is not None
    rng = random.Random(909)
    insts = seeded_as_instances(909, 10)
    assert len(insts) == 10
    mutations = 0
    for inst in insts:
        w = inst.witness
        As = builtin_as(False, w.dst.carrier.max_arity)
        b = induced_bimodule(w)
        beta = w.underlying
        assert check_assumption_13(As, b, identity_witness(As), beta).passed, inst.name
        X, eta = x_construction(As, b, identity_witness(As), beta)
        assert check_operad_axioms(X).passed, inst.name
        assert eta is not None
        p0 = profile_closed(0)
        e = beta.apply(p0, "*")
        rich = [
            profile_closed(n)
            for n in range(w.dst.carrier.max_arity + 1)
            if len(b.carrier.elements(profile_closed(n))) >= 2
        ]
        if not rich:
            continue
        pn = rich[rng.randrange(len(rich))]
        pool = b.carrier.elements(pn)
        y = pool[rng.randrange(len(pool))]
        key = (profile_closed(2), "*", ((p0, e), (pn, y)))
        gamma = dict(b.gamma_left)
        gamma[key] = next(v for v in pool if v != gamma[key])
        bad = BimoduleTables(b.over, b.carrier, gamma, b.right_act)
        bad_rep = check_assumption_13(As, bad, identity_witness(As), beta)
        assert not bad_rep.passed, inst.name
        assert bad_rep.violations and repr(y) in bad_rep.violations[0], inst.name
        with pytest.raises(ValueError, match="unit assumption"):
            x_construction(As, bad, identity_witness(As), beta)
        mutations += 1
    assert mutations >= 1
    _done(9, 10.0, started,
          "identity input reproduces the actions operad; unit mutations reported with witnesses")


def test_criterion_10_suite_determinism(capsys):
    started = time.perf_counter()
    assert cli.run(["suite", "--all", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert cli.run(["suite", "--all", "--seed", "7"]) == 0
    second = capsys.readouterr().out
    assert first and first == second
    elapsed = time.perf_counter() - started
    print(f"criterion 10 PASS in {elapsed:6.2f}s: suite output byte-identical across reruns")
