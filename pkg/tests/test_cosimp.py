import pytest

from operadkit.algebra import (
    act_inclusion,
    builtin_act,
    check_bimodule_axioms,
    check_infbimodule_axioms,
    induced_bimodule,
    induced_infbimodule,
    infbimodule_from_bimodule_map,
)
from operadkit.corpus import (
    restrict_witness_positive,
    seeded_act_instances,
)
from operadkit.cosimp import (
    BoxMonoid,
    CosimplicialPair,
    SemiCosimplicialSet,
    _box_relations,
    _box_triples,
    box_product,
    box_quotient,
    check_box_module,
    check_box_monoid,
    check_semicosimplicial,
    constant_point,
    cosimp_from_json,
    cosimp_to_json,
    derive_monoid_from_bimodule,
    derive_pair_from_infbimodule,
    infbimodule_from_pair,
    loops_bimodule,
    loops_example,
    mo_structure,
    truncate,
)
from operadkit.seqcore import SSeqMap, profile_closed, profile_open

from oracles import component_classes


def test_constant_point_passes():
    e = constant_point(5)
    assert check_semicosimplicial(e).passed
    ee = box_product(e, e)
    assert [len(level) for level in ee.levels] == [1] * 6
    assert check_semicosimplicial(ee).passed


def test_checker_detects_corrupted_coface():
    mon, _, _ = loops_example(["*", "u"], ["*"], "*", 3)
    x = mon.x
    bad = [list(row) for row in x.cofaces]
    d = dict(bad[1][0])
    d["(u)"] = "(u,u)"
    bad[1][0] = d
    corrupted = SemiCosimplicialSet(
        x.max_level, x.levels, tuple(tuple(row) for row in bad)
    )
    report = check_semicosimplicial(corrupted)
    assert not report.passed
    assert any("level 1" in v or "level 0" in v for v in report.violations)
    assert all(" d" in v and " on " in v for v in report.violations)


def test_derive_pair_on_act_is_pointwise_trivial():
    m = induced_infbimodule(act_inclusion(4))
    pair = derive_pair_from_infbimodule(m)
    assert [len(level) for level in pair.closed_part.levels] == [1] * 5
    assert [len(level) for level in pair.open_part.levels] == [1] * 4
    assert check_semicosimplicial(pair.closed_part).passed
    assert check_semicosimplicial(pair.open_part).passed


def test_derive_pair_formulas_are_table_lookups():
    w = seeded_act_instances(3, 1, unital=False)[0].witness
    m = induced_infbimodule(w)
    pair = derive_pair_from_infbimodule(m)
    p2c, p2o = profile_closed(2), profile_open(2)
    for n in range(m.carrier.max_arity):
        pn = profile_closed(n)
        for x in m.carrier.elements(pn):
            assert pair.closed_part.coface(n, 0, x) == m.left_inf[(p2c, "*", 2, pn, x)]
            assert pair.closed_part.coface(n, n + 1, x) == m.left_inf[
                (p2c, "*", 1, pn, x)
            ]
            assert pair.h[n][x] == m.left_inf[(p2o, "*", 1, pn, x)]


def test_roundtrip_on_corpus():
    for inst in seeded_act_instances(17, 4, unital=False):
        m = induced_infbimodule(inst.witness)
        pair = derive_pair_from_infbimodule(m)
        assert check_semicosimplicial(pair.closed_part).passed
        assert check_semicosimplicial(pair.open_part).passed
        back = infbimodule_from_pair(pair)
        assert back.carrier == m.carrier
        assert back.left_inf == m.left_inf
        assert back.right_inf == m.right_inf


def test_pair_of_points_gives_act_bimodule():
    pair = CosimplicialPair(
        constant_point(4), constant_point(3), tuple({"*": "*"} for _ in range(4))
    )
    assert infbimodule_from_pair(pair) == induced_infbimodule(act_inclusion(4))


def test_pair_roundtrip_from_loops():
    bm, eta = loops_bimodule(["*", "u"], ["*"], "*", 3)
    positive = builtin_act(False, 3).carrier
    eta_pos = SSeqMap(
        positive, bm.carrier, {p: dict(eta.maps[p]) for p in positive.profiles()}
    )
    m = infbimodule_from_bimodule_map(bm, eta_pos)
    pair = derive_pair_from_infbimodule(m)
    again = derive_pair_from_infbimodule(infbimodule_from_pair(pair))
    assert again == pair
    assert check_infbimodule_axioms(infbimodule_from_pair(pair)).passed


def test_h_commutes_is_enforced():
    closed = constant_point(3)
    levels = (("a", "b"),) * 3
    cofaces = tuple(
        tuple({"a": "a", "b": "b"} for _ in range(n + 2)) for n in range(2)
    )
    open_ = SemiCosimplicialSet(2, levels, cofaces)
    flip = {"*": "a"}, {"*": "b"}, {"*": "a"}
    with pytest.raises(ValueError, match="does not commute"):
        CosimplicialPair(closed, open_, flip)


def test_mo_structure_rules_and_axioms():
    w = seeded_act_instances(5, 1, unital=False, max_max_arity=3)[0].witness
    m = induced_infbimodule(w)
    mo = mo_structure(m)
    assert check_infbimodule_axioms(mo).passed
    bound = mo.carrier.max_arity
    p2 = profile_closed(2)
    p2c, p2o = profile_closed(2), profile_open(2)
    for n in range(bound + 1):
        pn = profile_closed(n)
        po = profile_open(n + 1)
        for x in mo.carrier.elements(pn):
            if n + 1 <= bound:
                assert mo.left_inf[(p2, "*", 2, pn, x)] == m.left_inf[
                    (p2o, "*", 2, po, x)
                ]
                assert mo.left_inf[(p2, "*", 1, pn, x)] == m.right_inf[
                    (po, x, n + 1, p2o, "*")
                ]
            for i in range(1, n + 1):
                if n + 1 <= bound:
                    assert mo.right_inf[(pn, x, i, p2, "*")] == m.right_inf[
                        (po, x, i, p2c, "*")
                    ]


def test_box_classes_match_component_oracle():
    mon, _, _ = loops_example(["*", "u"], ["*"], "*", 4)
    x = mon.x
    box, classes = box_quotient(x, x)
    for m in range(box.max_level + 1):
        triples = _box_triples(x, x, m)
        oracle = component_classes(triples, list(_box_relations(x, x, m)))
        mine = {}
        for t, rep in classes[m].items():
            mine.setdefault(rep, set()).add(t)
        assert set(map(frozenset, mine.values())) == set(map(frozenset, oracle))
        for rep, members in mine.items():
            assert rep == min(members)
    assert check_semicosimplicial(box).passed


def test_box_zero_level_size():
    mon2, _, _ = loops_example(["*", "u"], ["*"], "*", 3)
    mon3, _, _ = loops_example(["*", "u", "v"], ["*"], "*", 3)
    box = box_product(mon2.x, mon3.x)
    assert len(box.levels[0]) == len(mon2.x.levels[0]) * len(mon3.x.levels[0])


def _unit_law_bijections(x):
    e = constant_point(x.max_level)
    left, lclasses = box_quotient(e, x)
    to_x = []
    for m in range(x.max_level + 1):
        level_map = {}
        for t, rep in lclasses[m].items():
            if t[0] == 0:
                assert rep not in level_map or level_map[rep] == t[2]
                level_map[rep] = t[2]
        assert sorted(level_map.values()) == list(x.levels[m])
        assert len(level_map) == len(left.levels[m])
        to_x.append(level_map)
    for m in range(x.max_level):
        for t, rep in lclasses[m].items():
            for i in range(m + 2):
                p, a, b = t
                img = (p + 1, a, b) if i <= p else (p, a, x.coface(m - p, i - p, b))
                assert to_x[m + 1][lclasses[m + 1][img]] == x.coface(m, i, to_x[m][rep])
    right, rclasses = box_quotient(x, e)
    for m in range(x.max_level + 1):
        level_map = {}
        for t, rep in rclasses[m].items():
            if t[0] == m:
                assert rep not in level_map or level_map[rep] == t[1]
                level_map[rep] = t[1]
        assert sorted(level_map.values()) == list(x.levels[m])
        assert len(level_map) == len(right.levels[m])


def test_box_unit_laws():
    mon, module, _ = loops_example(["*", "u"], ["*", "u"], "*", 4)
    _unit_law_bijections(mon.x)
    _unit_law_bijections(module.x)
    _unit_law_bijections(constant_point(4))


def test_box_associativity_cardinalities():
    a, _, _ = loops_example(["*", "u"], ["*"], "*", 3)
    b, _, _ = loops_example(["*", "v", "w"], ["*"], "*", 3)
    e = constant_point(3)
    for x, y, z in [(a.x, b.x, e), (a.x, a.x, b.x), (e, b.x, a.x)]:
        lhs = box_product(box_product(x, y), z)
        rhs = box_product(x, box_product(y, z))
        assert [len(l) for l in lhs.levels] == [len(l) for l in rhs.levels]


def test_box_rejects_non_cosimplicial_input():
    levels = (("a",), ("b", "c"), ("d", "e"))
    cofaces = (
        ({"a": "b"}, {"a": "c"}),
        ({"b": "d", "c": "d"}, {"b": "d", "c": "d"}, {"b": "e", "c": "e"}),
    )
    bad = SemiCosimplicialSet(2, levels, cofaces)
    assert not check_semicosimplicial(bad).passed
    with pytest.raises(ValueError, match="not well-defined"):
        box_quotient(bad, constant_point(2))


def test_trivial_monoid_passes():
    e = constant_point(4)
    mult = {}
    for m in range(5):
        for p in range(m + 1):
            mult[(p, "*", "*")] = "*"
    mon = BoxMonoid(e, mult, ("*",) * 5)
    assert check_box_monoid(mon).passed


def test_box_monoid_detects_corrupted_mult():
    mon, _, _ = loops_example(["*", "u"], ["*"], "*", 3)
    mult = dict(mon.mult)
    mult[(1, "(u)", "(u)")] = "(u,*)"
    report = check_box_monoid(BoxMonoid(mon.x, mult, mon.unit))
    assert not report.passed
    assert any("(u)" in v for v in report.violations)


def test_derived_monoid_matches_loops_example():
    mon, module, h = loops_example(["*", "u", "v"], ["*", "u"], "*", 3)
    bm, eta = loops_bimodule(["*", "u", "v"], ["*", "u"], "*", 3)
    assert check_bimodule_axioms(bm).passed
    derived_mon, derived_mod, derived_h = derive_monoid_from_bimodule(bm, eta)
    assert derived_mon == mon
    assert derived_mod.x == module.x and derived_mod.act == module.act
    assert derived_h == h


def test_derived_monoid_formula_and_corpus():
    for inst in seeded_act_instances(23, 2, unital=True):
        w = inst.witness
        bm = induced_bimodule(restrict_witness_positive(w))
        eta = w.underlying
        mon, module, h = derive_monoid_from_bimodule(bm, eta)
        assert check_box_monoid(mon).passed
        assert check_box_module(module).passed
        p2c, p1c = profile_closed(2), profile_closed(1)
        bound = bm.carrier.max_arity
        e1 = eta.apply(p1c, "*")
        for n in range(bound):
            pn = profile_closed(n)
            for x in bm.carrier.elements(pn):
                assert mon.x.coface(n, 0, x) == bm.gamma_left[
                    (p2c, "*", ((p1c, e1), (pn, x)))
                ]
        top = module.x.max_level
        for n in range(top):
            for i in range(n + 2):
                for x in mon.x.levels[n]:
                    assert h[n + 1][mon.x.coface(n, i, x)] == module.x.coface(
                        n, i, h[n][x]
                    )
        for p in range(top + 1):
            for q in range(top + 1 - p):
                for x in mon.x.levels[p]:
                    for y in mon.x.levels[q]:
                        assert h[p + q][mon.mult[(p, x, y)]] == module.act[
                            (p, x, h[q][y])
                        ]


def test_loops_example_counts_and_checkers():
    mon, module, h = loops_example(["*", "u"], ["*"], "*", 3)
    assert len(mon.x.levels[3]) == 8
    assert mon.x.coface(1, 1, "(u)") == "(u,u)"
    mon3, mod3, _ = loops_example(["*", "u", "v"], ["*", "u"], "*", 4)
    assert check_box_monoid(mon3).passed
    assert check_box_module(mod3).passed
    with pytest.raises(ValueError, match="basepoint"):
        loops_example(["*", "u"], ["u"], "*", 3)


def test_truncate_and_mixed_levels():
    mon, _, _ = loops_example(["*", "u"], ["*"], "*", 4)
    cut = truncate(mon.x, 2)
    assert cut.max_level == 2
    box = box_product(cut, mon.x)
    assert box.max_level == 2
    with pytest.raises(ValueError, match="truncate"):
        truncate(cut, 4)


def test_json_roundtrip():
    mon, _, _ = loops_example(["*", "u"], ["*"], "*", 3)
    text = cosimp_to_json(mon.x)
    again = cosimp_from_json(text)
    assert again == mon.x
    assert cosimp_to_json(again) == text
