"""Frozen examples and property checks for the rational cell models."""

import json
import random
from fractions import Fraction

import pytest

from operadkit.cells import (
    BVPoint,
    CubePoint,
    SimplexPoint,
    TildeCubePoint,
    all_identity_groups,
    audit_subdivision,
    blacktriangle_apply,
    bv_compose,
    bv_corolla,
    bv_normalize,
    bv_point,
    check_point_identities,
    cube_identities,
    penta_normalize,
    quotient_identities,
    simplex_coface,
    simplex_identities,
    simplex_section,
    square_apply,
    subdivision_cells,
    tilde_cube_apply,
    tilde_cube_identities,
    tilde_cube_normalize,
    wa_face_poset,
)
from operadkit.seqcore import CLOSED, OPEN
from operadkit.trees import (
    STree,
    TreeShape,
    corolla,
    enumerate_trees,
    graft,
    n_vertices,
    vertex_paths,
)

F = Fraction


def catalan(n):
    """Binary trees with n leaves, by the splitting recurrence."""
    counts = [0, 1]
    for k in range(2, n + 1):
        counts.append(sum(counts[i] * counts[k - i] for i in range(1, k)))
    return counts[n]


def schroeder(n):
    """Trees with n leaves and arities >= 2, by the linear recurrence."""
    a = [0, 1, 1]
    for k in range(2, n):
        a.append((3 * (2 * k - 1) * a[k] - (k - 2) * a[k - 1]) // (k + 1))
    return a[n]


# ---------------------------------------------------------------------------
# simplex points


def test_simplex_point_validation():
    with pytest.raises(ValueError):
        SimplexPoint((F(2, 3), F(1, 3)))
    with pytest.raises(ValueError):
        SimplexPoint((F(3, 2),))
    with pytest.raises(ValueError):
        SimplexPoint((), F(-1, 2))
    p = SimplexPoint((F(1, 3), F(2, 3)), F(1, 2))
    assert p.colour == OPEN and p.level == 3
    assert SimplexPoint((F(1, 2),)).colour == CLOSED


def test_blacktriangle_frozen_examples():
    assert blacktriangle_apply(("below-closed", 2), SimplexPoint((F(1, 2),))) == (
        SimplexPoint((F(0), F(1, 2)))
    )
    assert blacktriangle_apply(
        ("below-open", 1), SimplexPoint((F(1, 3), F(2, 3)))
    ) == SimplexPoint((F(1, 3), F(2, 3)), F(1))
    assert blacktriangle_apply(
        ("graft-open",), SimplexPoint((), F(2, 5))
    ) == SimplexPoint((F(1),), F(2, 5))
    assert blacktriangle_apply(
        ("graft-closed", 2), SimplexPoint((F(1, 4), F(1, 2), F(3, 4)))
    ) == SimplexPoint((F(1, 4), F(1, 2), F(1, 2), F(3, 4)))
    assert blacktriangle_apply(
        ("below-closed", 1), SimplexPoint((F(1, 5),))
    ) == SimplexPoint((F(1, 5), F(1)))


def test_blacktriangle_rejects_mismatches():
    closed = SimplexPoint((F(1, 2),))
    with pytest.raises(ValueError):
        blacktriangle_apply(("graft-closed", 2), closed)
    with pytest.raises(ValueError):
        blacktriangle_apply(("graft-open",), closed)
    with pytest.raises(ValueError):
        blacktriangle_apply(("below-open", 2), closed)
    opened = SimplexPoint((F(1, 2),), F(1, 3))
    with pytest.raises(ValueError):
        blacktriangle_apply(("below-closed", 1), opened)
    with pytest.raises(ValueError):
        blacktriangle_apply(("below-open", 1), opened)
    with pytest.raises(ValueError):
        blacktriangle_apply(("twist", 1), closed)


def test_simplex_identity_catalogue_passes():
    report = check_point_identities(simplex_identities(), seed=11, count=400)
    assert report.passed, report.to_text()


def test_coface_rule_exhaustive_on_fixed_points():
    points = [
        SimplexPoint(()),
        SimplexPoint((F(1, 3), F(1, 2))),
        SimplexPoint((F(0), F(1, 4), F(1)), None),
        SimplexPoint((), F(1, 2)),
        SimplexPoint((F(1, 5), F(2, 5)), F(1)),
    ]
    for p in points:
        n = len(p.coordinates)
        for i in range(0, n + 2):
            for j in range(i + 1, n + 3):
                lhs = simplex_coface(j, simplex_coface(i, p))
                rhs = simplex_coface(i, simplex_coface(j - 1, p))
                assert lhs == rhs, (p, i, j)


def test_section_commutes_with_every_coface():
    p = SimplexPoint((F(1, 6), F(1, 3), F(5, 6)))
    for i in range(0, len(p.coordinates) + 2):
        assert simplex_coface(i, simplex_section(p)) == simplex_section(
            simplex_coface(i, p)
        )


# ---------------------------------------------------------------------------
# cube points


def test_square_frozen_examples():
    assert square_apply(("graft-closed", 1), CubePoint(CLOSED, ())) == CubePoint(
        CLOSED, (F(0),)
    )
    assert square_apply(
        ("join-closed",), CubePoint(CLOSED, (F(1, 2),)), CubePoint(CLOSED, (F(1, 3),))
    ) == CubePoint(CLOSED, (F(1, 2), F(1), F(1, 3)))
    assert square_apply(("graft-open",), CubePoint(OPEN, (F(2, 7),))) == CubePoint(
        OPEN, (F(2, 7), F(0))
    )
    assert square_apply(
        ("join-open",), CubePoint(CLOSED, ()), CubePoint(OPEN, (F(1, 4),))
    ) == CubePoint(OPEN, (F(1), F(1, 4)))


def test_square_rejects_mismatches():
    closed = CubePoint(CLOSED, (F(1, 2),))
    opened = CubePoint(OPEN, (F(1, 2),))
    with pytest.raises(ValueError):
        square_apply(("graft-open",), closed)
    with pytest.raises(ValueError):
        square_apply(("graft-closed", 2), opened)
    with pytest.raises(ValueError):
        square_apply(("join-closed",), closed, opened)
    with pytest.raises(ValueError):
        square_apply(("join-open",), opened, opened)
    with pytest.raises(ValueError):
        square_apply(("join-closed",), closed)


def test_cube_identity_catalogue_passes():
    report = check_point_identities(cube_identities(), seed=12, count=400)
    assert report.passed, report.to_text()


# ---------------------------------------------------------------------------
# the tilde cube quotient


def test_tilde_normal_form_examples():
    assert tilde_cube_normalize((F(3, 10), F(1), F(7, 10))).coordinates == (
        F(1),
        F(1),
        F(7, 10),
    )
    stay = TildeCubePoint((F(1, 2), F(1, 2)))
    assert tilde_cube_normalize(stay) == stay
    assert stay.normalized
    assert not TildeCubePoint((F(1, 2), F(1))).normalized
    assert tilde_cube_apply(("below", 2), TildeCubePoint((F(1, 2),))).coordinates == (
        F(1),
        F(1, 2),
    )
    assert tilde_cube_apply(("graft", 1), TildeCubePoint((F(1),))).coordinates == (
        F(1),
        F(1),
    )


def test_tilde_identity_catalogue_passes():
    report = check_point_identities(tilde_cube_identities(), seed=13, count=400)
    assert report.passed, report.to_text()


# ---------------------------------------------------------------------------
# edge-length trees


def two_corolla_tower():
    shape = graft(corolla(2), 1, corolla(2))
    return shape


def test_bv_point_validation():
    with pytest.raises(ValueError):
        bv_point(corolla(1), CLOSED, {})
    shape = two_corolla_tower()
    with pytest.raises(ValueError):
        bv_point(shape, CLOSED, {})
    with pytest.raises(ValueError):
        bv_point(shape, CLOSED, {(0,): F(3, 2)})
    with pytest.raises(ValueError):
        bv_point(shape, CLOSED, {(1,): F(1, 2)})
    p = bv_point(shape, CLOSED, {(0,): F(1, 2)})
    assert p.level == 3 and p.colour == CLOSED and p.normalized


def test_bv_normalize_contracts_zero_edges():
    shape = two_corolla_tower()
    p = bv_point(shape, CLOSED, {(0,): F(0)})
    q = bv_normalize(p)
    assert q.tree.shape == corolla(3)
    assert q.lengths == ()
    nested = graft(shape, 1, corolla(2))
    r = bv_normalize(bv_point(nested, CLOSED, {(0,): F(0), (0, 0): F(1, 3)}))
    assert r.tree.shape == graft(corolla(3), 1, corolla(2))
    assert r.lengths == (((0,), F(1, 3)),)
    assert bv_normalize(r) == r


def test_bv_compose_grafts_with_unit_edge():
    p = bv_corolla(2, CLOSED)
    q = bv_corolla(2, CLOSED)
    r = bv_compose(p, 1, q)
    assert r.tree.shape == two_corolla_tower()
    assert r.lengths == (((0,), F(1)),)
    open_p = bv_corolla(2, OPEN)
    s = bv_compose(open_p, 2, bv_corolla(2, OPEN))
    assert s.colour == OPEN
    assert s.tree.colour_of((1,)) == OPEN
    with pytest.raises(ValueError):
        bv_compose(open_p, 1, bv_corolla(2, OPEN))
    with pytest.raises(ValueError):
        bv_compose(p, 3, q)


def test_bv_compose_unit_trees_are_neutral():
    unit = BVPoint(STree(TreeShape(None), (((), CLOSED),)), ())
    p = bv_corolla(3, CLOSED)
    assert bv_compose(p, 2, unit) == p
    assert bv_compose(unit, 1, p) == p


def test_bv_compose_associativity_exhaustive_small():
    shapes = [
        s
        for n in range(2, 5)
        for s in enumerate_trees(n, "min_arity_2")
        if s.root is not None and n_vertices(s) <= 3
    ]
    rng = random.Random(29)

    def rand_point(shape):
        lengths = {
            v: F(rng.randrange(1, 7), 6) for v in vertex_paths(shape) if v != ()
        }
        return bv_point(shape, CLOSED, lengths)

    for sp in shapes[:6]:
        p = rand_point(sp)
        np_ = p.level
        for sq in shapes[:6]:
            q = rand_point(sq)
            for sr in shapes[:4]:
                r = rand_point(sr)
                for i in range(1, np_ + 1):
                    for j in range(1, q.level + 1):
                        nested = bv_compose(p, i, bv_compose(q, j, r))
                        flat = bv_compose(bv_compose(p, i, q), i + j - 1, r)
                        assert nested == flat
                    for j in range(i + 1, np_ + 1):
                        left = bv_compose(bv_compose(p, i, q), j + q.level - 1, r)
                        right = bv_compose(bv_compose(p, j, r), i, q)
                        assert left == right


def test_bv_compose_associativity_open():
    p = bv_corolla(3, OPEN)
    q = bv_corolla(2, OPEN)
    r = bv_corolla(2, CLOSED)
    nested = bv_compose(p, 3, bv_compose(q, 1, r))
    flat = bv_compose(bv_compose(p, 3, q), 3, r)
    assert nested == flat


# ---------------------------------------------------------------------------
# the pinning relation on open points


def open_spine_with_closed_arm():
    shape = graft(graft(corolla(2), 2, corolla(2)), 1, two_corolla_tower())
    return shape


def test_penta_normalize_examples():
    p = bv_corolla(4, OPEN)
    assert penta_normalize(p) == p
    shape = open_spine_with_closed_arm()
    lengths = {(0,): F(1), (0, 0): F(1, 2), (1,): F(2, 3)}
    q = bv_point(shape, OPEN, lengths)
    assert q.tree.colour_of((0,)) == CLOSED
    assert q.tree.colour_of((0, 0)) == CLOSED
    assert q.tree.colour_of((1,)) == OPEN
    pinned = penta_normalize(q)
    assert pinned.length_of((0, 0)) == F(1)
    assert pinned.length_of((0,)) == F(1)
    assert pinned.length_of((1,)) == F(2, 3)
    free_below = bv_point(shape, OPEN, {(0,): F(1, 2), (0, 0): F(1), (1,): F(1)})
    kept = penta_normalize(free_below)
    assert kept == free_below
    with pytest.raises(ValueError):
        penta_normalize(bv_corolla(3, CLOSED))


def test_penta_pins_through_chains():
    shape = graft(corolla(2), 1, graft(corolla(2), 1, two_corolla_tower()))
    lengths = {(0,): F(1), (0, 0): F(1, 3), (0, 0, 0): F(1, 5)}
    p = bv_point(shape, OPEN, lengths)
    pinned = penta_normalize(p)
    assert [x for _, x in pinned.lengths] == [F(1), F(1), F(1)]


def test_quotient_identity_catalogue_passes():
    report = check_point_identities(quotient_identities(), seed=14, count=400)
    assert report.passed, report.to_text()


def test_identity_groups_cover_all_families():
    groups = all_identity_groups()
    assert set(groups) == {"simplex", "cube", "tilde", "quotient"}
    assert all(groups.values())


# ---------------------------------------------------------------------------
# face posets


def test_face_poset_frozen_vectors():
    assert wa_face_poset(2, CLOSED).f_vector() == (1,)
    assert wa_face_poset(3, CLOSED).f_vector() == (2, 1)
    assert wa_face_poset(4, CLOSED).f_vector() == (5, 5, 1)
    assert wa_face_poset(5, CLOSED).f_vector() == (14, 21, 9, 1)
    assert wa_face_poset(4, OPEN).f_vector() == (5, 5, 1)


def test_face_poset_counts_match_recurrences():
    for n in range(2, 7):
        for colour in (CLOSED, OPEN):
            poset = wa_face_poset(n, colour)
            fvec = poset.f_vector()
            assert fvec[0] == catalan(n)
            assert sum(fvec) == schroeder(n)
            assert fvec[-1] == 1
            assert poset.euler_characteristic() == 1


def test_face_poset_covers_raise_dimension_by_one():
    poset = wa_face_poset(5, CLOSED)
    dims = dict(poset.faces)
    for code, ups in poset.covers:
        for up in ups:
            assert dims[up] == dims[code] + 1
    top = [code for code, dim in poset.faces if dim == poset.top_dimension]
    assert len(top) == 1
    assert dims[top[0]] == 3


def test_face_poset_rejects_out_of_range_levels():
    with pytest.raises(ValueError):
        wa_face_poset(1, CLOSED)
    with pytest.raises(ValueError):
        wa_face_poset(12, CLOSED, cap=9)


def test_face_poset_exports():
    poset = wa_face_poset(4, OPEN)
    data = json.loads(poset.to_json())
    assert data["n"] == 4 and data["colour"] == "open"
    assert len(data["faces"]) == 11
    assert all(set(face) == {"code", "dim", "covers"} for face in data["faces"])
    dot = poset.to_dot()
    assert dot.startswith("digraph") and dot.endswith("}")
    arrows = [line for line in dot.splitlines() if "->" in line]
    assert len(arrows) == sum(len(ups) for _, ups in poset.covers)


def test_face_codes_carry_the_colouring():
    closed = wa_face_poset(3, CLOSED)
    opened = wa_face_poset(3, OPEN)
    assert {code for code, _ in closed.faces} != {code for code, _ in opened.faces}
    assert all(code.endswith("o") for code, _ in opened.faces)


# ---------------------------------------------------------------------------
# subdivision bookkeeping


def test_subdivision_cells_dimensions():
    for n in range(1, 7):
        cells = subdivision_cells(n)
        assert len(cells) == schroeder(n)
        report = audit_subdivision(cells, n)
        assert report.passed, report.violations
        assert report.max_total == n - 1
    four = subdivision_cells(4)
    by_vertices = {}
    for cell in four:
        by_vertices.setdefault(n_vertices(cell.tree), []).append(cell)
    corolla_cell = by_vertices[1][0]
    assert corolla_cell.dim_chi == 1 and corolla_cell.dim_lambda == 2
    for cell in by_vertices[3]:
        assert cell.dim_lambda == 0


def test_subdivision_rejects_out_of_range_levels():
    with pytest.raises(ValueError):
        subdivision_cells(0)
    with pytest.raises(ValueError):
        subdivision_cells(11, cap=10)


def test_subdivision_audit_reports_violations():
    cells = subdivision_cells(3)
    report = audit_subdivision(cells, 4)
    assert not report.passed
    assert report.violations
