"""Planar rooted trees, edge colourings, pearls and sections.

A tree shape is a nested structure of vertices; a leaf slot is stored as
None inside its parent's child tuple and the tree with no vertex at all
(the unit tree) has root None.  Vertices and leaf slots are addressed by
paths: tuples of 0-based child indices from the root.  Every edge is
identified with the path of whatever sits directly above it, so the
trunk is the path () and leaf edges are leaf-slot paths.  Public APIs
number leaves 1-based in planar (left to right) order.

Canonical codes: a leaf is "l", a vertex is "(" followed by its children
and ")".  Coloured codes append a colour mark after each leaf or vertex
("c" for closed, "o" for open, "[id]" otherwise); pearls are prefixed
with "p".  Trees are ordered by (vertex count, code).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping

from .seqcore import CLOSED, OPEN, Colour, Profile

Node = tuple  # a vertex: tuple of children, each a Node or None
Path = tuple  # tuple of 0-based child indices


@dataclass(frozen=True)
class TreeShape:
    root: Node | None

    def __repr__(self) -> str:
        return f"TreeShape({shape_code(self)})"


UNIT_TREE = TreeShape(None)


def corolla(n: int) -> TreeShape:
    return TreeShape((None,) * n)


def node_at(t: TreeShape, path: Path) -> Node | None:
    node = t.root
    for i in path:
        if node is None or i >= len(node):
            raise ValueError(f"no node at path {path}")
        node = node[i]
    return node


def _walk(node, path, vertices, leaves):
    if node is None:
        leaves.append(path)
        return
    vertices.append(path)
    for i, child in enumerate(node):
        _walk(child, path + (i,), vertices, leaves)


def vertex_paths(t: TreeShape) -> tuple[Path, ...]:
    vertices, leaves = [], []
    _walk(t.root, (), vertices, leaves)
    return tuple(vertices)


def leaf_paths(t: TreeShape) -> tuple[Path, ...]:
    """Leaf slots in planar order."""
    vertices, leaves = [], []
    _walk(t.root, (), vertices, leaves)
    return tuple(leaves)


def edge_paths(t: TreeShape) -> tuple[Path, ...]:
    vertices, leaves = [], []
    _walk(t.root, (), vertices, leaves)
    return tuple(sorted(vertices + leaves))


def n_leaves(t: TreeShape) -> int:
    return len(leaf_paths(t))


def n_vertices(t: TreeShape) -> int:
    return len(vertex_paths(t))


def arity_at(t: TreeShape, path: Path) -> int:
    node = node_at(t, path)
    if node is None:
        raise ValueError(f"path {path} is a leaf")
    return len(node)


def join(t: TreeShape, v1: Path, v2: Path) -> Path:
    """The first common vertex on the two root paths: longest common prefix."""
    node_at(t, v1), node_at(t, v2)
    k = 0
    while k < len(v1) and k < len(v2) and v1[k] == v2[k]:
        k += 1
    return v1[:k]


def distance(t: TreeShape, v1: Path, v2: Path) -> int:
    j = join(t, v1, v2)
    return (len(v1) - len(j)) + (len(v2) - len(j))


def shape_code(t: TreeShape) -> str:
    def rec(node):
        if node is None:
            return "l"
        return "(" + "".join(rec(child) for child in node) + ")"

    return rec(t.root)


def _replace(node, path, repl):
    if not path:
        return repl
    i = path[0]
    return node[:i] + (_replace(node[i], path[1:], repl),) + node[i + 1 :]


def graft(t: TreeShape, i: int, s: TreeShape) -> TreeShape:
    """Replace the i-th leaf (1-based, planar order) of t by s."""
    leaves = leaf_paths(t)
    if not 1 <= i <= len(leaves):
        raise ValueError(f"leaf index {i} out of range")
    if t.root is None:
        return s
    return TreeShape(_replace(t.root, leaves[i - 1], s.root))


def contract_map(t: TreeShape, v: Path) -> tuple[TreeShape, dict[Path, Path]]:
    """Contract the inner edge below vertex v, merging v into its parent.

    Returns the new shape and the path relabelling of every surviving edge.
    """
    if v == ():
        raise ValueError("the trunk is not an inner edge")
    node = node_at(t, v)
    if node is None:
        raise ValueError(f"path {v} is a leaf, not a vertex")
    parent_path, j = v[:-1], v[-1]
    parent = node_at(t, parent_path)
    merged = parent[:j] + node + parent[j + 1 :]
    new_shape = TreeShape(_replace(t.root, parent_path, merged))
    k = len(node)
    mapping = {}
    for w in edge_paths(t):
        if w == v:
            continue
        if w[: len(v)] == v:
            mapping[w] = parent_path + (j + w[len(v)],) + w[len(v) + 1 :]
        elif w[: len(parent_path)] == parent_path and len(w) > len(parent_path):
            i = w[len(parent_path)]
            if i > j:
                mapping[w] = parent_path + (i + k - 1,) + w[len(parent_path) + 1 :]
            else:
                mapping[w] = w
        else:
            mapping[w] = w
    return new_shape, mapping


def contract_edge(t: TreeShape, v: Path) -> TreeShape:
    return contract_map(t, v)[0]


def insert_vertex_map(t: TreeShape, e: Path) -> tuple[TreeShape, dict[Path, Path]]:
    """Insert an arity-1 vertex on edge e; the new vertex takes path e and
    everything that was at or above e moves below e + (0,)."""
    old = node_at(t, e)
    new_shape = TreeShape(_replace(t.root, e, (old,)))
    mapping = {}
    for w in edge_paths(t):
        if w[: len(e)] == e:
            mapping[w] = e + (0,) + w[len(e) :]
        else:
            mapping[w] = w
    return new_shape, mapping


def colour_mark(c: Colour) -> str:
    if c == CLOSED:
        return "c"
    if c == OPEN:
        return "o"
    return f"[{c.id}]"


@dataclass(frozen=True)
class STree:
    """A tree shape with a colour on every edge (vertex and leaf paths)."""

    shape: TreeShape
    colours: tuple[tuple[Path, Colour], ...]

    def __post_init__(self):
        pairs = tuple(sorted(self.colours))
        object.__setattr__(self, "colours", pairs)
        expected = set(edge_paths(self.shape))
        got = {p for p, _ in pairs}
        if got != expected or len(pairs) != len(expected):
            raise ValueError("colouring does not match the edge set")

    @cached_property
    def cmap(self) -> dict[Path, Colour]:
        return dict(self.colours)

    def colour_of(self, path: Path) -> Colour:
        return self.cmap[path]

    @property
    def profile(self) -> Profile:
        ins = tuple(self.cmap[p] for p in leaf_paths(self.shape))
        return Profile(ins, self.cmap[()])

    def __repr__(self) -> str:
        return f"STree({stree_code(self)})"


def stree(shape: TreeShape, cmap: Mapping[Path, Colour]) -> STree:
    return STree(shape, tuple(cmap.items()))


def stree_code(st: STree, pearls: Iterable[Path] = ()) -> str:
    pearlset = set(pearls)

    def rec(node, path):
        mark = colour_mark(st.colour_of(path))
        if node is None:
            return "l" + mark
        inner = "".join(rec(child, path + (i,)) for i, child in enumerate(node))
        prefix = "p" if path in pearlset else ""
        return f"{prefix}({inner}){mark}"

    return rec(st.shape.root, ())


def vertex_profile(st: STree, v: Path) -> Profile:
    node = node_at(st.shape, v)
    if node is None:
        raise ValueError(f"path {v} is a leaf")
    ins = tuple(st.colour_of(v + (i,)) for i in range(len(node)))
    return Profile(ins, st.colour_of(v))


def stree_contract(st: STree, v: Path) -> STree:
    new_shape, mapping = contract_map(st.shape, v)
    return stree(new_shape, {mapping[w]: c for w, c in st.colours if w != v})


def tree_sort_key(t):
    if isinstance(t, TreeShape):
        return (n_vertices(t), shape_code(t))
    if isinstance(t, STree):
        return (n_vertices(t.shape), stree_code(t))
    if isinstance(t, PearlTree):
        return (n_vertices(t.stree.shape), stree_code(t.stree, (t.pearl,)))
    if isinstance(t, SectionTree):
        return (n_vertices(t.stree.shape), stree_code(t.stree, t.pearls))
    if isinstance(t, OColouredTree):
        return (n_vertices(t.stree.shape), stree_code(t.stree))
    raise TypeError(f"not a tree: {t!r}")


@dataclass(frozen=True)
class PearlTree:
    """A coloured tree with one marked vertex at distance 1 from all others."""

    stree: STree
    pearl: Path

    def __post_init__(self):
        shape = self.stree.shape
        if node_at(shape, self.pearl) is None:
            raise ValueError("the pearl must be a vertex")
        for v in vertex_paths(shape):
            if v != self.pearl and distance(shape, v, self.pearl) != 1:
                raise ValueError(f"vertex {v} is not adjacent to the pearl")

    def __repr__(self) -> str:
        return f"PearlTree({stree_code(self.stree, (self.pearl,))})"


@dataclass(frozen=True)
class SectionTree:
    """A coloured tree with a set of pearls cutting every upward path once.

    Every path from a leaf or from an arity-0 non-pearl vertex to the trunk
    passes through exactly one pearl, and any non-pearl vertex comparable to
    a pearl (one lies on the other's root path) is adjacent to it.
    """

    stree: STree
    pearls: tuple[Path, ...]

    def __post_init__(self):
        object.__setattr__(self, "pearls", tuple(sorted(self.pearls)))
        shape = self.stree.shape
        pearlset = set(self.pearls)
        if not pearlset:
            raise ValueError("a section needs at least one pearl")
        vertices = set(vertex_paths(shape))
        if not pearlset <= vertices:
            raise ValueError("pearls must be vertices")
        ends = list(leaf_paths(shape))
        ends += [v for v in vertices if arity_at(shape, v) == 0 and v not in pearlset]
        for end in ends:
            crossings = sum(
                1 for k in range(len(end) + 1) if end[:k] in pearlset
            )
            if crossings != 1:
                raise ValueError(f"path to {end} crosses {crossings} pearls")
        for v in vertices - pearlset:
            for p in pearlset:
                j = join(shape, v, p)
                if j in (v, p) and distance(shape, v, p) != 1:
                    raise ValueError(f"vertex {v} is comparable to pearl {p} at distance > 1")

    def __repr__(self) -> str:
        return f"SectionTree({stree_code(self.stree, self.pearls)})"


@dataclass(frozen=True)
class OColouredTree:
    """A coloured tree whose vertices follow the output-colour rule: a
    closed-output vertex has all inputs closed; an open-output vertex has
    at least one input, the last open and the others closed.  The trunk
    is open."""

    stree: STree

    def __post_init__(self):
        if self.stree.colour_of(()) != OPEN:
            raise ValueError("the trunk must be open")
        for v in vertex_paths(self.stree.shape):
            p = vertex_profile(self.stree, v)
            if p.output == CLOSED:
                if any(c != CLOSED for c in p.inputs):
                    raise ValueError(f"closed vertex {v} with an open input")
            else:
                if p.arity == 0 or p.inputs[-1] != OPEN or any(
                    c != CLOSED for c in p.inputs[:-1]
                ):
                    raise ValueError(f"open vertex {v} must end in its single open input")

    def __repr__(self) -> str:
        return f"OColouredTree({stree_code(self.stree)})"


def colour_tree_n_o(shape: TreeShape) -> OColouredTree:
    """The unique open-trunk colouring of a shape under the output rule."""
    if shape.root is None:
        raise ValueError("the unit tree has no vertex to colour")
    cmap: dict[Path, Colour] = {(): OPEN}

    def rec(node, path):
        colour = cmap[path]
        k = len(node)
        if colour == OPEN and k == 0:
            raise ValueError("an open vertex needs at least one input")
        for i, child in enumerate(node):
            child_colour = OPEN if (colour == OPEN and i == k - 1) else CLOSED
            cmap[path + (i,)] = child_colour
            if child is not None:
                rec(child, path + (i,))

    rec(shape.root, ())
    return OColouredTree(stree(shape, cmap))


def all_closed(shape: TreeShape) -> STree:
    return stree(shape, {p: CLOSED for p in edge_paths(shape)})


def _shapes_min2(n: int) -> Iterator[Node | None]:
    """Roots of planar trees with n leaves, all arities >= 2 (None = leaf)."""
    if n == 1:
        yield None
        return
    for k in range(2, n + 1):
        for comp in _compositions(n, k):
            for kids in product(*[_memo_min2(m) for m in comp]):
                yield tuple(kids)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


_MIN2_CACHE: dict[int, tuple] = {}


def _memo_min2(n: int) -> tuple:
    if n not in _MIN2_CACHE:
        _MIN2_CACHE[n] = tuple(_shapes_min2(n))
    return _MIN2_CACHE[n]


def _shapes_all(n: int, max_vertices: int) -> Iterator[Node | None]:
    """Roots with n leaves, arities >= 1, at most max_vertices vertices."""

    def rec(leaves: int, budget: int) -> Iterator[tuple[Node | None, int]]:
        if leaves == 1:
            yield None, 0
        if budget == 0:
            return
        for k in range(1, leaves + 1):
            for comp in _compositions(leaves, k):
                for kids in _kid_lists(comp, budget - 1):
                    yield tuple(kid for kid, _ in kids), 1 + sum(v for _, v in kids)

    def _kid_lists(comp, budget):
        if not comp:
            yield ()
            return
        for kid, used in rec(comp[0], budget):
            for rest in _kid_lists(comp[1:], budget - used):
                yield ((kid, used),) + rest

    seen = set()
    for node, _ in rec(n, max_vertices):
        if node not in seen:
            seen.add(node)
            yield node


def _pearl_item_lists(
    leaves: int, k: int, top_arities: Iterable[int]
) -> Iterator[tuple]:
    """Sequences of k pearl inputs (None = leaf, t = top of arity t)
    consuming `leaves` leaves in total."""
    tops = tuple(top_arities)
    if k == 0:
        if leaves == 0:
            yield ()
        return
    if leaves >= 1:
        for rest in _pearl_item_lists(leaves - 1, k - 1, tops):
            yield (None,) + rest
    for t in tops:
        if t <= leaves:
            for rest in _pearl_item_lists(leaves - t, k - 1, tops):
                yield (t,) + rest


def _pearl_block(item_seq) -> Node:
    return tuple(None if item is None else (None,) * item for item in item_seq)


def enumerate_pearl_trees(
    profile: Profile,
    max_arity: int,
    colours: tuple[Colour, ...] | None = None,
    top_arities: Iterable[int] | None = None,
    below_arities: Iterable[int] | None = None,
) -> list[PearlTree]:
    """Pearl trees with the given leaf/trunk colours.  Defaults restrict
    non-pearl vertices to arities 2..max_arity; inner edges range over the
    colour set."""
    if colours is None:
        colours = tuple(sorted(set(profile.inputs) | {profile.output}))
    tops = tuple(t for t in (top_arities if top_arities is not None else range(2, max_arity + 1)))
    belows = tuple(
        b for b in (below_arities if below_arities is not None else range(2, max_arity + 1))
    )
    n = profile.arity
    out = []
    for below in (None,) + tuple(
        (a, arity - 1 - a) for arity in belows if arity >= 1 for a in range(arity)
    ):
        if below is not None and below[0] + below[1] > n:
            continue
        a, b = below if below is not None else (0, 0)
        middle = n - a - b if below is not None else n
        for k in range(0, max_arity + 1):
            for items in _pearl_item_lists(middle, k, tops):
                block = _pearl_block(items)
                if below is None:
                    shape = TreeShape(block)
                    pearl: Path = ()
                else:
                    shape = TreeShape((None,) * a + (block,) + (None,) * b)
                    pearl = (a,)
                free = [pearl + (i,) for i, item in enumerate(items) if item is not None]
                if below is not None:
                    free.append(pearl)
                fixed: dict[Path, Colour] = {(): profile.output}
                for lp, c in zip(leaf_paths(shape), profile.inputs):
                    fixed[lp] = c
                for assignment in product(colours, repeat=len(free)):
                    cmap = dict(fixed)
                    cmap.update(zip(free, assignment))
                    out.append(PearlTree(stree(shape, cmap), pearl))
    return sorted(out, key=tree_sort_key)


def enumerate_section_trees(
    profile: Profile,
    max_arity: int,
    colours: tuple[Colour, ...] | None = None,
    top_arities: Iterable[int] | None = None,
    root_arities: Iterable[int] | None = None,
) -> list[SectionTree]:
    """Section trees with the given leaf/trunk colours.  Defaults restrict
    non-pearl vertices (tops and the optional root) to arities 2..max_arity."""
    if colours is None:
        colours = tuple(sorted(set(profile.inputs) | {profile.output}))
    tops = tuple(t for t in (top_arities if top_arities is not None else range(2, max_arity + 1)))
    roots = tuple(
        r for r in (root_arities if root_arities is not None else range(2, max_arity + 1))
    )
    n = profile.arity
    out = []
    # a single pearl at the root
    for k in range(0, max_arity + 1):
        for items in _pearl_item_lists(n, k, tops):
            shape = TreeShape(_pearl_block(items))
            free = [(i,) for i, item in enumerate(items) if item is not None]
            fixed: dict[Path, Colour] = {(): profile.output}
            for lp, c in zip(leaf_paths(shape), profile.inputs):
                fixed[lp] = c
            for assignment in product(colours, repeat=len(free)):
                cmap = dict(fixed)
                cmap.update(zip(free, assignment))
                out.append(SectionTree(stree(shape, cmap), ((),)))
    # a root vertex whose children are all pearls
    for r in roots:
        if r < 1:
            continue
        for split in _weak_compositions(n, r):
            for blocks in product(
                *[
                    tuple(
                        (kp, items)
                        for kp in range(0, max_arity + 1)
                        for items in _pearl_item_lists(m, kp, tops)
                    )
                    for m in split
                ]
            ):
                kids = tuple(_pearl_block(items) for _, items in blocks)
                shape = TreeShape(kids)
                pearls = tuple((i,) for i in range(r))
                free = list(pearls)
                for i, (_, items) in enumerate(blocks):
                    free += [(i, j) for j, item in enumerate(items) if item is not None]
                fixed = {(): profile.output}
                for lp, c in zip(leaf_paths(shape), profile.inputs):
                    fixed[lp] = c
                for assignment in product(colours, repeat=len(free)):
                    cmap = dict(fixed)
                    cmap.update(zip(free, assignment))
                    out.append(SectionTree(stree(shape, cmap), pearls))
    return sorted(out, key=tree_sort_key)


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(0, total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def count_ptrees(m: int, n: int) -> int:
    """Closed pearl trees with m leaves and pearl arity n, other arities >= 2."""
    ptrees = enumerate_pearl_trees(
        Profile((CLOSED,) * m, CLOSED), max_arity=max(m + 1, n, 2), colours=(CLOSED,)
    )
    return sum(1 for pt in ptrees if arity_at(pt.stree.shape, pt.pearl) == n)


def enumerate_trees(n: int, constraint: str, **opts):
    """Enumerate trees with n leaves under a named constraint, sorted.

    Constraints: "all" (arities >= 1, needs max_vertices), "min_arity_2",
    "c_only" (min_arity_2 shapes, all edges closed), "tree_n_o" (open-trunk
    output-rule colourings of min_arity_2 shapes), "pearl" and "section"
    (need profile= and max_arity=).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if constraint == "all":
        if "max_vertices" not in opts:
            raise ValueError('"all" needs max_vertices')
        shapes = [TreeShape(r) for r in _shapes_all(n, opts["max_vertices"])]
        return sorted(shapes, key=tree_sort_key)
    if constraint == "min_arity_2":
        return sorted((TreeShape(r) for r in _memo_min2(n)), key=tree_sort_key)
    if constraint == "c_only":
        return sorted(
            (all_closed(TreeShape(r)) for r in _memo_min2(n)), key=tree_sort_key
        )
    if constraint == "tree_n_o":
        if n == 1:
            return [colour_tree_n_o(corolla(1))]
        return sorted(
            (colour_tree_n_o(TreeShape(r)) for r in _memo_min2(n) if r is not None),
            key=tree_sort_key,
        )
    if constraint == "pearl":
        profile = opts["profile"]
        if profile.arity != n:
            raise ValueError("profile arity must equal n")
        return enumerate_pearl_trees(
            profile, opts["max_arity"], colours=opts.get("colours")
        )
    if constraint == "section":
        profile = opts["profile"]
        if profile.arity != n:
            raise ValueError("profile arity must equal n")
        return enumerate_section_trees(
            profile, opts["max_arity"], colours=opts.get("colours")
        )
    raise ValueError(f"unknown constraint {constraint!r}")
