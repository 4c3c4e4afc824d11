"""Exact rational models of the cell-level resolutions.

Simplex points are weakly increasing rational tuples (open points carry
an extra free coordinate); cube points are plain rational tuples.  The
binary generators act on them by repeating, inserting or appending a
fixed endpoint, or joining two points with a separator.  The tilde cube
quotient pins every coordinate left of the last 1; edge-length trees
support grafting (new edge of length 1) and zero-edge contraction, with
a face poset per level whose faces are the trees themselves.  All
arithmetic is Fraction, so every identity check is an exact equality.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .seqcore import CLOSED, OPEN, Colour
from .trees import (
    OColouredTree,
    Path,
    STree,
    TreeShape,
    all_closed,
    arity_at,
    colour_tree_n_o,
    contract_map,
    enumerate_trees,
    graft,
    leaf_paths,
    n_leaves,
    n_vertices,
    stree_code,
    vertex_paths,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def _unit_fraction(x) -> Fraction:
    f = Fraction(x)
    if not ZERO <= f <= ONE:
        raise ValueError(f"coordinate {x} outside [0, 1]")
    return f


# ---------------------------------------------------------------------------
# simplex points


@dataclass(frozen=True)
class SimplexPoint:
    """A weakly increasing rational tuple in [0, 1]; open points carry an
    extra unconstrained prism coordinate, closed points none."""

    coordinates: tuple[Fraction, ...]
    prism: Fraction | None = None

    def __post_init__(self):
        coords = tuple(_unit_fraction(t) for t in self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if any(a > b for a, b in zip(coords, coords[1:])):
            raise ValueError("coordinates must be weakly increasing")
        if self.prism is not None:
            object.__setattr__(self, "prism", _unit_fraction(self.prism))

    @property
    def colour(self) -> Colour:
        return CLOSED if self.prism is None else OPEN

    @property
    def level(self) -> int:
        n = len(self.coordinates)
        return n if self.prism is None else n + 1


def blacktriangle_apply(generator: tuple, p: SimplexPoint) -> SimplexPoint:
    """Apply one binary generator to a simplex point.

    ("graft-closed", i) repeats the i-th coordinate; ("graft-open",)
    appends 1 to an open point; ("below-closed", 1) appends 1 and
    ("below-closed", 2) prepends 0 to a closed point; ("below-open", 1)
    turns a closed point open with prism coordinate 1, ("below-open", 2)
    prepends 0 to an open point.
    """
    kind = generator[0]
    t = p.coordinates
    if kind == "graft-closed":
        i = generator[1]
        if not 1 <= i <= len(t):
            raise ValueError(f"no closed slot {i} on a point of level {p.level}")
        return SimplexPoint(t[:i] + (t[i - 1],) + t[i:], p.prism)
    if kind == "graft-open":
        if p.prism is None:
            raise ValueError("the open generator grafts onto open points only")
        return SimplexPoint(t + (ONE,), p.prism)
    if kind == "below-closed":
        if p.prism is not None:
            raise ValueError("both slots of the closed generator are closed")
        if generator[1] == 1:
            return SimplexPoint(t + (ONE,))
        if generator[1] == 2:
            return SimplexPoint((ZERO,) + t)
        raise ValueError(f"no slot {generator[1]} on a binary generator")
    if kind == "below-open":
        if generator[1] == 1:
            if p.prism is not None:
                raise ValueError("slot 1 of the open generator is closed")
            return SimplexPoint(t, ONE)
        if generator[1] == 2:
            if p.prism is None:
                raise ValueError("slot 2 of the open generator is open")
            return SimplexPoint((ZERO,) + t, p.prism)
        raise ValueError(f"no slot {generator[1]} on a binary generator")
    raise ValueError(f"unknown generator {generator!r}")


def simplex_coface(i: int, p: SimplexPoint) -> SimplexPoint:
    """The i-th coface of the level shadow: prepend 0 (i = 0), repeat the
    i-th coordinate, or cap at the top index."""
    n = len(p.coordinates)
    if not 0 <= i <= n + 1:
        raise ValueError(f"coface index {i} outside 0..{n + 1}")
    if i == 0:
        below = ("below-closed", 2) if p.prism is None else ("below-open", 2)
        return blacktriangle_apply(below, p)
    if i <= n:
        return blacktriangle_apply(("graft-closed", i), p)
    top = ("below-closed", 1) if p.prism is None else ("graft-open",)
    return blacktriangle_apply(top, p)


def simplex_section(p: SimplexPoint) -> SimplexPoint:
    """The level-preserving map from closed to open points (prism 1)."""
    return blacktriangle_apply(("below-open", 1), p)


# ---------------------------------------------------------------------------
# cube points


@dataclass(frozen=True)
class CubePoint:
    """A rational tuple in [0, 1]; the level is one more than the length,
    so level 1 is the empty tuple in either colour."""

    colour: Colour
    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        if self.colour not in (CLOSED, OPEN):
            raise ValueError(f"unknown colour {self.colour!r}")
        coords = tuple(_unit_fraction(t) for t in self.coordinates)
        object.__setattr__(self, "coordinates", coords)

    @property
    def level(self) -> int:
        return len(self.coordinates) + 1


def square_apply(
    generator: tuple, p: CubePoint, q: CubePoint | None = None
) -> CubePoint:
    """Apply one binary generator to one or two cube points.

    ("graft-closed", i) inserts 0 at position i; ("graft-open",) appends
    0 to an open point; ("join-closed",) and ("join-open",) concatenate
    two points with a 1 between them, the second point being closed or
    open respectively.
    """
    kind = generator[0]
    t = p.coordinates
    if kind == "graft-closed":
        i = generator[1]
        slots = len(t) + 1 if p.colour == CLOSED else len(t)
        if not 1 <= i <= slots:
            raise ValueError(f"no closed slot {i} on a point of level {p.level}")
        return CubePoint(p.colour, t[: i - 1] + (ZERO,) + t[i - 1 :])
    if kind == "graft-open":
        if p.colour != OPEN:
            raise ValueError("the open generator grafts onto open points only")
        return CubePoint(OPEN, t + (ZERO,))
    if kind in ("join-closed", "join-open"):
        if q is None:
            raise ValueError("joins take two points")
        want = CLOSED if kind == "join-closed" else OPEN
        if p.colour != CLOSED or q.colour != want:
            raise ValueError(f"{kind} joins a closed point with a {want.id} one")
        return CubePoint(want, t + (ONE,) + q.coordinates)
    raise ValueError(f"unknown generator {generator!r}")


# ---------------------------------------------------------------------------
# the tilde cube quotient


def _pin_left_of_last_one(coords: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    for idx in range(len(coords) - 1, -1, -1):
        if coords[idx] == ONE:
            return (ONE,) * idx + coords[idx:]
    return coords


@dataclass(frozen=True)
class TildeCubePoint:
    """A rational tuple in [0, 1]; the normal form has every coordinate
    left of the last 1 equal to 1."""

    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(_unit_fraction(t) for t in self.coordinates)
        object.__setattr__(self, "coordinates", coords)

    @property
    def normalized(self) -> bool:
        return self.coordinates == _pin_left_of_last_one(self.coordinates)

    @property
    def level(self) -> int:
        return len(self.coordinates)


def tilde_cube_normalize(p: TildeCubePoint | Iterable) -> TildeCubePoint:
    """The class representative: pin every coordinate left of the last 1."""
    coords = p.coordinates if isinstance(p, TildeCubePoint) else tuple(p)
    return TildeCubePoint(_pin_left_of_last_one(TildeCubePoint(coords).coordinates))


def tilde_cube_apply(generator: tuple, p: TildeCubePoint) -> TildeCubePoint:
    """Apply a generator and normalize.

    ("graft", i) inserts 0 at position i (1 <= i <= level); ("below", 1)
    appends 0; ("below", 2) prepends 1.
    """
    kind = generator[0]
    t = p.coordinates
    if kind == "graft":
        i = generator[1]
        if not 1 <= i <= len(t):
            raise ValueError(f"no slot {i} on a point of level {p.level}")
        return tilde_cube_normalize(t[: i - 1] + (ZERO,) + t[i - 1 :])
    if kind == "below":
        if generator[1] == 1:
            return tilde_cube_normalize(t + (ZERO,))
        if generator[1] == 2:
            return tilde_cube_normalize((ONE,) + t)
        raise ValueError(f"no slot {generator[1]} on a binary generator")
    raise ValueError(f"unknown generator {generator!r}")


# ---------------------------------------------------------------------------
# edge-length trees


def _recolour(shape: TreeShape, colour: Colour) -> STree:
    if colour == CLOSED:
        return all_closed(shape)
    return colour_tree_n_o(shape).stree


@dataclass(frozen=True)
class BVPoint:
    """A coloured tree, every vertex of arity at least two, with a
    rational length in [0, 1] on each inner edge.  The colouring is all
    closed, or the unique open-trunk colouring.  Normal form: no edge of
    length 0."""

    tree: STree
    lengths: tuple[tuple[Path, Fraction], ...]

    def __post_init__(self):
        if self.tree.colour_of(()) == OPEN:
            OColouredTree(self.tree)
        elif any(c != CLOSED for _, c in self.tree.colours):
            raise ValueError("a closed point must be closed on every edge")
        for v in vertex_paths(self.tree.shape):
            if arity_at(self.tree.shape, v) < 2:
                raise ValueError(f"vertex {v} has arity below two")
        pairs = tuple(sorted((p, _unit_fraction(x)) for p, x in self.lengths))
        object.__setattr__(self, "lengths", pairs)
        inner = {v for v in vertex_paths(self.tree.shape) if v != ()}
        if {p for p, _ in pairs} != inner or len(pairs) != len(inner):
            raise ValueError("lengths must cover the inner edges exactly")

    @property
    def colour(self) -> Colour:
        return self.tree.colour_of(())

    @property
    def level(self) -> int:
        return n_leaves(self.tree.shape)

    @property
    def normalized(self) -> bool:
        return all(x != ZERO for _, x in self.lengths)

    def length_of(self, e: Path) -> Fraction:
        return dict(self.lengths)[e]


def bv_point(shape: TreeShape, colour: Colour, lengths: Mapping[Path, object]) -> BVPoint:
    return BVPoint(_recolour(shape, colour), tuple(lengths.items()))


def bv_corolla(n: int, colour: Colour) -> BVPoint:
    top = min(enumerate_trees(n, "min_arity_2"), key=n_vertices)
    return bv_point(top, colour, {})


def bv_normalize(p: BVPoint) -> BVPoint:
    """Contract every zero-length inner edge, merging its endpoints."""
    shape, colour = p.tree.shape, p.colour
    lengths = dict(p.lengths)
    while True:
        zero = sorted(v for v, x in lengths.items() if x == ZERO)
        if not zero:
            break
        v = zero[0]
        shape, mapping = contract_map(shape, v)
        lengths = {mapping[w]: x for w, x in lengths.items() if w != v}
    return bv_point(shape, colour, lengths)


def bv_compose(p: BVPoint, i: int, q: BVPoint) -> BVPoint:
    """Graft q onto the i-th leaf of p, the new inner edge of length 1."""
    leaves = leaf_paths(p.tree.shape)
    if not 1 <= i <= len(leaves):
        raise ValueError(f"leaf index {i} out of range")
    at = leaves[i - 1]
    if p.tree.colour_of(at) != q.colour:
        raise ValueError(
            f"colour mismatch: leaf {i} is {p.tree.colour_of(at).id},"
            f" the grafted point {q.colour.id}"
        )
    if q.tree.shape.root is None:
        return p
    if p.tree.shape.root is None:
        return q
    shape = graft(p.tree.shape, i, q.tree.shape)
    lengths = dict(p.lengths)
    lengths[at] = ONE
    for w, x in q.lengths:
        lengths[at + w] = x
    return bv_normalize(bv_point(shape, p.colour, lengths))


def penta_normalize(p: BVPoint) -> BVPoint:
    """The class representative of an open point: pin to 1 every closed
    edge lying above a closed edge already pinned or equal to 1."""
    if p.colour != OPEN:
        raise ValueError("only open points carry the pinning relation")
    canon: dict[Path, Fraction] = {}
    for e, x in sorted(p.lengths, key=lambda item: len(item[0])):
        if p.tree.colour_of(e) == CLOSED and any(
            p.tree.colour_of(a) == CLOSED and canon[a] == ONE
            for a in (e[:k] for k in range(1, len(e)))
            if a in canon
        ):
            canon[e] = ONE
        else:
            canon[e] = x
    return BVPoint(p.tree, tuple(canon.items()))


# ---------------------------------------------------------------------------
# face posets


@dataclass(frozen=True)
class FacePoset:
    """Faces are trees with all arities at least two, coded as coloured
    tree strings; a face is covered by the trees obtained from it by
    contracting one inner edge, and its dimension is the top dimension
    minus its inner edge count."""

    n: int
    colour: Colour
    faces: tuple[tuple[str, int], ...]
    covers: tuple[tuple[str, tuple[str, ...]], ...]

    @property
    def top_dimension(self) -> int:
        return self.n - 2

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.top_dimension + 1)
        for _, dim in self.faces:
            counts[dim] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** dim * count for dim, count in enumerate(self.f_vector()))

    def to_json(self) -> str:
        cover_map = dict(self.covers)
        return json.dumps(
            {
                "n": self.n,
                "colour": self.colour.id,
                "faces": [
                    {"code": code, "dim": dim, "covers": list(cover_map[code])}
                    for code, dim in self.faces
                ],
            },
            indent=2,
            sort_keys=True,
        )

    def to_dot(self) -> str:
        lines = [f'digraph "faces({self.n};{self.colour.id})" {{']
        for code, dim in self.faces:
            lines.append(f'  "{code}" [label="{code}\\ndim {dim}"];')
        for code, ups in self.covers:
            for up in ups:
                lines.append(f'  "{code}" -> "{up}";')
        lines.append("}")
        return "\n".join(lines)


def wa_face_poset(n: int, colour: Colour, cap: int = 9) -> FacePoset:
    """The face poset of the level-n cell complex in the given colour."""
    if n < 2:
        raise ValueError("the face poset needs a level of at least 2")
    if n > cap:
        raise ValueError(f"level {n} above the cap {cap}")
    shapes = enumerate_trees(n, "min_arity_2")
    faces = []
    covers = []
    codes = {}
    for shape in shapes:
        codes[shape] = stree_code(_recolour(shape, colour))
    for shape in shapes:
        inner = [v for v in vertex_paths(shape) if v != ()]
        faces.append((codes[shape], n - 2 - len(inner)))
        ups = sorted(
            {stree_code(_recolour(contract_map(shape, v)[0], colour)) for v in inner}
        )
        covers.append((codes[shape], tuple(ups)))
    faces.sort(key=lambda f: (f[1], f[0]))
    covers.sort()
    poset = FacePoset(n, colour, tuple(faces), tuple(covers))
    if sum(1 for _, dim in poset.faces if dim == poset.top_dimension) != 1:
        raise ValueError("the corolla should be the unique top face")
    cover_map = dict(poset.covers)
    for code, dim in poset.faces:
        if dim < poset.top_dimension and not cover_map[code]:
            raise ValueError(f"face {code} below the top has no cover")
    return poset


# ---------------------------------------------------------------------------
# subdivision bookkeeping


@dataclass(frozen=True)
class SubdivisionCell:
    """One cell per tree: the product of a factor of dimension arity - 2
    per vertex and an ordered cube on the vertex set."""

    tree: TreeShape
    dim_lambda: int
    dim_chi: int

    @property
    def total(self) -> int:
        return self.dim_lambda + self.dim_chi


@dataclass(frozen=True)
class SubdivisionReport:
    passed: bool
    max_total: int
    violations: tuple[str, ...]


def subdivision_cells(n: int, cap: int = 10) -> tuple[SubdivisionCell, ...]:
    """One cell per tree with n leaves and all arities at least two."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise ValueError(f"level {n} above the cap {cap}")
    cells = []
    for shape in enumerate_trees(n, "min_arity_2"):
        lam = sum(arity_at(shape, v) - 2 for v in vertex_paths(shape))
        cells.append(SubdivisionCell(shape, lam, n_vertices(shape)))
    return tuple(cells)


def audit_subdivision(cells: Sequence[SubdivisionCell], n: int) -> SubdivisionReport:
    """Every cell of a level-n subdivision must have total dimension
    exactly n - 1."""
    violations = []
    max_total = 0
    for cell in cells:
        max_total = max(max_total, cell.total)
        if cell.total != n - 1:
            violations.append(
                f"tree {cell.tree!r}: {cell.dim_lambda} + {cell.dim_chi}"
                f" != {n - 1}"
            )
    return SubdivisionReport(not violations, max_total, tuple(violations))


# ---------------------------------------------------------------------------
# identity checking at random rational points

Identity = tuple[str, Callable[[random.Random], tuple[object, object]]]


@dataclass(frozen=True)
class IdentityReport:
    passed: bool
    checks: tuple[tuple[str, int, str], ...]

    def to_text(self) -> str:
        lines = []
        for name, failures, witness in self.checks:
            mark = "ok" if failures == 0 else f"FAIL x{failures}: {witness}"
            lines.append(f"{name}: {mark}")
        return "\n".join(lines)


def check_point_identities(
    identities: Sequence[Identity], seed: int, count: int = 1000
) -> IdentityReport:
    """Run every identity at `count` random rational points, exactly."""
    rows = []
    for name, run in identities:
        rng = random.Random(f"{seed}:{name}")
        failures = 0
        witness = ""
        for _ in range(count):
            lhs, rhs = run(rng)
            if lhs != rhs:
                failures += 1
                if not witness:
                    witness = f"{lhs!r} != {rhs!r}"
        rows.append((name, failures, witness))
    return IdentityReport(all(f == 0 for _, f, _ in rows), tuple(rows))


def _rand_unit(rng: random.Random) -> Fraction:
    d = rng.randrange(1, 13)
    return Fraction(rng.randrange(0, d + 1), d)


def _rand_nonzero_unit(rng: random.Random) -> Fraction:
    d = rng.randrange(1, 13)
    return Fraction(rng.randrange(1, d + 1), d)


def _rand_weakly_increasing(rng: random.Random, k: int) -> tuple[Fraction, ...]:
    return tuple(sorted(_rand_unit(rng) for _ in range(k)))


def _rand_closed_simplex(rng: random.Random, lo: int = 0, hi: int = 5) -> SimplexPoint:
    return SimplexPoint(_rand_weakly_increasing(rng, rng.randrange(lo, hi + 1)))


def _rand_open_simplex(rng: random.Random, lo: int = 1, hi: int = 5) -> SimplexPoint:
    n = rng.randrange(lo, hi + 1)
    return SimplexPoint(_rand_weakly_increasing(rng, n - 1), _rand_unit(rng))


def simplex_identities() -> tuple[Identity, ...]:
    """Every two-step generator identity forced on simplex points."""

    def closed_graft_commute(rng):
        x = _rand_closed_simplex(rng, 2, 5)
        n = len(x.coordinates)
        i = rng.randrange(1, n)
        j = rng.randrange(i, n + 1)
        lhs = blacktriangle_apply(
            ("graft-closed", j + 1), blacktriangle_apply(("graft-closed", i), x)
        )
        rhs = blacktriangle_apply(
            ("graft-closed", i), blacktriangle_apply(("graft-closed", j), x)
        )
        return lhs, rhs

    def open_graft_commute(rng):
        x = _rand_open_simplex(rng, 3, 5)
        n = len(x.coordinates)
        i = rng.randrange(1, n)
        j = rng.randrange(i, n + 1)
        lhs = blacktriangle_apply(
            ("graft-closed", j + 1), blacktriangle_apply(("graft-closed", i), x)
        )
        rhs = blacktriangle_apply(
            ("graft-closed", i), blacktriangle_apply(("graft-closed", j), x)
        )
        return lhs, rhs

    def open_graft_mixed(rng):
        x = _rand_open_simplex(rng, 2, 5)
        i = rng.randrange(1, len(x.coordinates) + 1)
        lhs = blacktriangle_apply(
            ("graft-closed", i), blacktriangle_apply(("graft-open",), x)
        )
        rhs = blacktriangle_apply(
            ("graft-open",), blacktriangle_apply(("graft-closed", i), x)
        )
        return lhs, rhs

    def open_graft_nest(rng):
        x = _rand_open_simplex(rng, 1, 5)
        n = len(x.coordinates) + 1
        grown = blacktriangle_apply(("graft-open",), x)
        lhs = blacktriangle_apply(("graft-closed", n), grown)
        rhs = blacktriangle_apply(("graft-open",), grown)
        return lhs, rhs

    def left_assoc_closed_outer(rng):
        x = _rand_closed_simplex(rng)
        grown = blacktriangle_apply(("below-closed", 1), x)
        lhs = blacktriangle_apply(("below-closed", 1), grown)
        rhs = blacktriangle_apply(("graft-closed", len(grown.coordinates)), grown)
        return lhs, rhs

    def left_assoc_closed_middle(rng):
        x = _rand_closed_simplex(rng)
        lhs = blacktriangle_apply(
            ("below-closed", 1), blacktriangle_apply(("below-closed", 2), x)
        )
        rhs = blacktriangle_apply(
            ("below-closed", 2), blacktriangle_apply(("below-closed", 1), x)
        )
        return lhs, rhs

    def left_assoc_closed_inner(rng):
        x = _rand_closed_simplex(rng)
        grown = blacktriangle_apply(("below-closed", 2), x)
        lhs = blacktriangle_apply(("below-closed", 2), grown)
        rhs = blacktriangle_apply(("graft-closed", 1), grown)
        return lhs, rhs

    def left_assoc_open_first(rng):
        x = _rand_closed_simplex(rng)
        lhs = blacktriangle_apply(
            ("below-open", 1), blacktriangle_apply(("below-closed", 1), x)
        )
        rhs = blacktriangle_apply(
            ("graft-open",), blacktriangle_apply(("below-open", 1), x)
        )
        return lhs, rhs

    def left_assoc_open_second(rng):
        x = _rand_closed_simplex(rng)
        lhs = blacktriangle_apply(
            ("below-open", 1), blacktriangle_apply(("below-closed", 2), x)
        )
        rhs = blacktriangle_apply(
            ("below-open", 2), blacktriangle_apply(("below-open", 1), x)
        )
        return lhs, rhs

    def left_assoc_open_third(rng):
        x = _rand_open_simplex(rng)
        grown = blacktriangle_apply(("below-open", 2), x)
        lhs = blacktriangle_apply(("graft-closed", 1), grown)
        rhs = blacktriangle_apply(("below-open", 2), grown)
        return lhs, rhs

    def interchange_closed_cap(rng):
        x = _rand_closed_simplex(rng, 1, 5)
        i = rng.randrange(1, len(x.coordinates) + 1)
        lhs = blacktriangle_apply(
            ("graft-closed", i), blacktriangle_apply(("below-closed", 1), x)
        )
        rhs = blacktriangle_apply(
            ("below-closed", 1), blacktriangle_apply(("graft-closed", i), x)
        )
        return lhs, rhs

    def interchange_closed_base(rng):
        x = _rand_closed_simplex(rng, 1, 5)
        i = rng.randrange(1, len(x.coordinates) + 1)
        lhs = blacktriangle_apply(
            ("graft-closed", i + 1), blacktriangle_apply(("below-closed", 2), x)
        )
        rhs = blacktriangle_apply(
            ("below-closed", 2), blacktriangle_apply(("graft-closed", i), x)
        )
        return lhs, rhs

    def interchange_open_section(rng):
        x = _rand_closed_simplex(rng, 1, 5)
        i = rng.randrange(1, len(x.coordinates) + 1)
        lhs = blacktriangle_apply(
            ("graft-closed", i), blacktriangle_apply(("below-open", 1), x)
        )
        rhs = blacktriangle_apply(
            ("below-open", 1), blacktriangle_apply(("graft-closed", i), x)
        )
        return lhs, rhs

    def interchange_open_base(rng):
        x = _rand_open_simplex(rng, 2, 5)
        i = rng.randrange(1, len(x.coordinates) + 1)
        lhs = blacktriangle_apply(
            ("graft-closed", i + 1), blacktriangle_apply(("below-open", 2), x)
        )
        rhs = blacktriangle_apply(
            ("below-open", 2), blacktriangle_apply(("graft-closed", i), x)
        )
        return lhs, rhs

    def interchange_open_top(rng):
        x = _rand_open_simplex(rng)
        lhs = blacktriangle_apply(
            ("graft-open",), blacktriangle_apply(("below-open", 2), x)
        )
        rhs = blacktriangle_apply(
            ("below-open", 2), blacktriangle_apply(("graft-open",), x)
        )
        return lhs, rhs

    def coface_rule(rng):
        x = _rand_closed_simplex(rng) if rng.random() < 0.5 else _rand_open_simplex(rng)
        n = len(x.coordinates)
        i = rng.randrange(0, n + 2)
        j = rng.randrange(i + 1, n + 3)
        lhs = simplex_coface(j, simplex_coface(i, x))
        rhs = simplex_coface(i, simplex_coface(j - 1, x))
        return lhs, rhs

    def section_commutes(rng):
        x = _rand_closed_simplex(rng)
        i = rng.randrange(0, len(x.coordinates) + 2)
        lhs = simplex_coface(i, simplex_section(x))
        rhs = simplex_section(simplex_coface(i, x))
        return lhs, rhs

    return (
        ("simplex closed grafts commute", closed_graft_commute),
        ("simplex open grafts commute", open_graft_commute),
        ("simplex open and closed grafts commute", open_graft_mixed),
        ("simplex open graft nests", open_graft_nest),
        ("simplex closed triple, outer slot", left_assoc_closed_outer),
        ("simplex closed triple, middle slot", left_assoc_closed_middle),
        ("simplex closed triple, inner slot", left_assoc_closed_inner),
        ("simplex open triple, first slot", left_assoc_open_first),
        ("simplex open triple, second slot", left_assoc_open_second),
        ("simplex open triple, third slot", left_assoc_open_third),
        ("simplex cap then graft", interchange_closed_cap),
        ("simplex base then graft", interchange_closed_base),
        ("simplex section then graft", interchange_open_section),
        ("simplex open base then graft", interchange_open_base),
        ("simplex open base then open graft", interchange_open_top),
        ("simplex coface rule", coface_rule),
        ("simplex section commutes with cofaces", section_commutes),
    )


def _rand_cube(rng: random.Random, colour: Colour, lo: int = 1, hi: int = 5) -> CubePoint:
    n = rng.randrange(lo, hi + 1)
    return CubePoint(colour, tuple(_rand_unit(rng) for _ in range(n - 1)))


def cube_identities() -> tuple[Identity, ...]:
    """Every two-step generator identity forced on cube points."""

    def closed_grafts_commute(rng):
        x = _rand_cube(rng, CLOSED)
        n = len(x.coordinates) + 1
        i = rng.randrange(1, n + 1)
        j = rng.randrange(i, n + 1)
        lhs = square_apply(("graft-closed", j + 1), square_apply(("graft-closed", i), x))
        rhs = square_apply(("graft-closed", i), square_apply(("graft-closed", j), x))
        return lhs, rhs

    def open_grafts_commute(rng):
        x = _rand_cube(rng, OPEN, 3)
        n = len(x.coordinates)
        i = rng.randrange(1, n)
        j = rng.randrange(i, n + 1)
        lhs = square_apply(("graft-closed", j + 1), square_apply(("graft-closed", i), x))
        rhs = square_apply(("graft-closed", i), square_apply(("graft-closed", j), x))
        return lhs, rhs

    def open_graft_mixed(rng):
        x = _rand_cube(rng, OPEN, 2)
        i = rng.randrange(1, len(x.coordinates) + 1)
        lhs = square_apply(("graft-closed", i), square_apply(("graft-open",), x))
        rhs = square_apply(("graft-open",), square_apply(("graft-closed", i), x))
        return lhs, rhs

    def open_graft_nest(rng):
        x = _rand_cube(rng, OPEN)
        grown = square_apply(("graft-open",), x)
        lhs = square_apply(("graft-closed", len(grown.coordinates)), grown)
        rhs = square_apply(("graft-open",), grown)
        return lhs, rhs

    def join_assoc_closed(rng):
        x, y, z = (_rand_cube(rng, CLOSED) for _ in range(3))
        lhs = square_apply(("join-closed",), square_apply(("join-closed",), x, y), z)
        rhs = square_apply(("join-closed",), x, square_apply(("join-closed",), y, z))
        return lhs, rhs

    def join_assoc_open(rng):
        x, y = _rand_cube(rng, CLOSED), _rand_cube(rng, CLOSED)
        z = _rand_cube(rng, OPEN)
        lhs = square_apply(("join-open",), square_apply(("join-closed",), x, y), z)
        rhs = square_apply(("join-open",), x, square_apply(("join-open",), y, z))
        return lhs, rhs

    def join_graft_left(rng):
        x, y = _rand_cube(rng, CLOSED), _rand_cube(rng, CLOSED)
        i = rng.randrange(1, len(x.coordinates) + 2)
        lhs = square_apply(("graft-closed", i), square_apply(("join-closed",), x, y))
        rhs = square_apply(("join-closed",), square_apply(("graft-closed", i), x), y)
        return lhs, rhs

    def join_graft_right(rng):
        x, y = _rand_cube(rng, CLOSED), _rand_cube(rng, CLOSED)
        n = len(x.coordinates) + 1
        j = rng.randrange(1, len(y.coordinates) + 2)
        lhs = square_apply(("graft-closed", n + j), square_apply(("join-closed",), x, y))
        rhs = square_apply(("join-closed",), x, square_apply(("graft-closed", j), y))
        return lhs, rhs

    def join_open_graft_right(rng):
        x, y = _rand_cube(rng, CLOSED), _rand_cube(rng, OPEN)
        lhs = square_apply(("graft-open",), square_apply(("join-open",), x, y))
        rhs = square_apply(("join-open",), x, square_apply(("graft-open",), y))
        return lhs, rhs

    def join_open_graft_left(rng):
        x, y = _rand_cube(rng, CLOSED), _rand_cube(rng, OPEN)
        i = rng.randrange(1, len(x.coordinates) + 2)
        lhs = square_apply(("graft-closed", i), square_apply(("join-open",), x, y))
        rhs = square_apply(("join-open",), square_apply(("graft-closed", i), x), y)
        return lhs, rhs

    def join_open_graft_middle(rng):
        x = _rand_cube(rng, CLOSED)
        y = _rand_cube(rng, OPEN, 2)
        n = len(x.coordinates) + 1
        j = rng.randrange(1, len(y.coordinates) + 1)
        lhs = square_apply(("graft-closed", n + j), square_apply(("join-open",), x, y))
        rhs = square_apply(("join-open",), x, square_apply(("graft-closed", j), y))
        return lhs, rhs

    return (
        ("cube closed grafts commute", closed_grafts_commute),
        ("cube open grafts commute", open_grafts_commute),
        ("cube open and closed grafts commute", open_graft_mixed),
        ("cube open graft nests", open_graft_nest),
        ("cube join associative, closed", join_assoc_closed),
        ("cube join associative, open", join_assoc_open),
        ("cube join then left graft", join_graft_left),
        ("cube join then right graft", join_graft_right),
        ("cube open join then open graft", join_open_graft_right),
        ("cube open join then left graft", join_open_graft_left),
        ("cube open join then middle graft", join_open_graft_middle),
    )


def _rand_tilde(rng: random.Random, lo: int = 1, hi: int = 5) -> TildeCubePoint:
    n = rng.randrange(lo, hi + 1)
    return TildeCubePoint(tuple(_rand_unit(rng) for _ in range(n)))


def tilde_cube_identities() -> tuple[Identity, ...]:
    """Generator identities on tilde cube classes, plus well-definedness
    of the normal form."""

    def grafts_commute(rng):
        x = _rand_tilde(rng, 2)
        n = len(x.coordinates)
        i = rng.randrange(1, n)
        j = rng.randrange(i, n + 1)
        lhs = tilde_cube_apply(("graft", j + 1), tilde_cube_apply(("graft", i), x))
        rhs = tilde_cube_apply(("graft", i), tilde_cube_apply(("graft", j), x))
        return lhs, rhs

    def triple_outer(rng):
        x = _rand_tilde(rng)
        grown = tilde_cube_apply(("below", 1), x)
        lhs = tilde_cube_apply(("below", 1), grown)
        rhs = tilde_cube_apply(("graft", len(grown.coordinates)), grown)
        return lhs, rhs

    def triple_middle(rng):
        x = _rand_tilde(rng)
        lhs = tilde_cube_apply(("below", 1), tilde_cube_apply(("below", 2), x))
        rhs = tilde_cube_apply(("below", 2), tilde_cube_apply(("below", 1), x))
        return lhs, rhs

    def triple_inner(rng):
        x = _rand_tilde(rng)
        grown = tilde_cube_apply(("below", 2), x)
        lhs = tilde_cube_apply(("below", 2), grown)
        rhs = tilde_cube_apply(("graft", 1), grown)
        return lhs, rhs

    def interchange_append(rng):
        x = _rand_tilde(rng)
        i = rng.randrange(1, len(x.coordinates) + 1)
        lhs = tilde_cube_apply(("graft", i), tilde_cube_apply(("below", 1), x))
        rhs = tilde_cube_apply(("below", 1), tilde_cube_apply(("graft", i), x))
        return lhs, rhs

    def interchange_prepend(rng):
        x = _rand_tilde(rng)
        i = rng.randrange(1, len(x.coordinates) + 1)
        lhs = tilde_cube_apply(("graft", i + 1), tilde_cube_apply(("below", 2), x))
        rhs = tilde_cube_apply(("below", 2), tilde_cube_apply(("graft", i), x))
        return lhs, rhs

    def well_defined(rng):
        x = _rand_tilde(rng)
        gens = [("graft", i) for i in range(1, len(x.coordinates) + 1)]
        gens += [("below", 1), ("below", 2)]
        g = gens[rng.randrange(len(gens))]
        return tilde_cube_apply(g, x), tilde_cube_apply(g, tilde_cube_normalize(x))

    def normalize_idempotent(rng):
        x = _rand_tilde(rng)
        return tilde_cube_normalize(tilde_cube_normalize(x)), tilde_cube_normalize(x)

    return (
        ("tilde cube grafts commute", grafts_commute),
        ("tilde cube triple, outer slot", triple_outer),
        ("tilde cube triple, middle slot", triple_middle),
        ("tilde cube triple, inner slot", triple_inner),
        ("tilde cube append then graft", interchange_append),
        ("tilde cube prepend then graft", interchange_prepend),
        ("tilde cube action well defined on classes", well_defined),
        ("tilde cube normal form idempotent", normalize_idempotent),
    )


def _shape_pool(lo: int, hi: int) -> tuple[TreeShape, ...]:
    pool = []
    for n in range(lo, hi + 1):
        pool.extend(enumerate_trees(n, "min_arity_2"))
    return tuple(s for s in pool if s.root is not None)


def _rand_bv(rng: random.Random, colour: Colour, pool: Sequence[TreeShape]) -> BVPoint:
    shape = pool[rng.randrange(len(pool))]
    lengths = {}
    for v in vertex_paths(shape):
        if v == ():
            continue
        lengths[v] = ONE if rng.random() < Fraction(1, 3) else _rand_nonzero_unit(rng)
    return bv_point(shape, colour, lengths)


def _random_pin_move(rng: random.Random, p: BVPoint) -> BVPoint:
    lengths = dict(p.lengths)
    pivots = [
        e
        for e, x in lengths.items()
        if x == ONE and p.tree.colour_of(e) == CLOSED
    ]
    rng.shuffle(pivots)
    for pivot in pivots:
        above = [
            e
            for e in lengths
            if len(e) > len(pivot)
            and e[: len(pivot)] == pivot
            and p.tree.colour_of(e) == CLOSED
        ]
        if above:
            e = above[rng.randrange(len(above))]
            lengths[e] = _rand_nonzero_unit(rng)
            return BVPoint(p.tree, tuple(lengths.items()))
    return p


def quotient_identities() -> tuple[Identity, ...]:
    """Well-definedness of the pinning normal form on open edge-length
    trees, and idempotence of both tree normal forms."""
    pool = _shape_pool(2, 5)

    def pin_idempotent(rng):
        p = _rand_bv(rng, OPEN, pool)
        return penta_normalize(penta_normalize(p)), penta_normalize(p)

    def pin_move_invariant(rng):
        p = _rand_bv(rng, OPEN, pool)
        return penta_normalize(_random_pin_move(rng, p)), penta_normalize(p)

    def open_lengths_kept(rng):
        p = _rand_bv(rng, OPEN, pool)
        q = penta_normalize(p)
        kept = tuple(
            x for e, x in p.lengths if p.tree.colour_of(e) == OPEN
        )
        now = tuple(x for e, x in q.lengths if q.tree.colour_of(e) == OPEN)
        return kept, now

    def contraction_idempotent(rng):
        shape = pool[rng.randrange(len(pool))]
        colour = CLOSED if rng.random() < 0.5 else OPEN
        lengths = {
            v: ZERO if rng.random() < Fraction(1, 3) else _rand_unit(rng)
            for v in vertex_paths(shape)
            if v != ()
        }
        p = bv_normalize(bv_point(shape, colour, lengths))
        return bv_normalize(p), p

    return (
        ("pinned representative idempotent", pin_idempotent),
        ("pinned representative constant on moves", pin_move_invariant),
        ("pinning keeps open edge lengths", open_lengths_kept),
        ("zero edge contraction idempotent", contraction_idempotent),
    )


def all_identity_groups() -> dict[str, tuple[Identity, ...]]:
    return {
        "simplex": simplex_identities(),
        "cube": cube_identities(),
        "tilde": tilde_cube_identities(),
        "quotient": quotient_identities(),
    }
