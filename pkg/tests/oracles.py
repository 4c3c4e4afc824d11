"""Independent counting and quotient oracles, written before the library.

Every function here recomputes an expected value by a route disjoint from
the library's own algorithms (closed formulas, DP recurrences, graph
search).  Tests freeze these values or call the oracles directly and
compare against the library.
"""

from collections import deque
from functools import lru_cache
from itertools import product
from math import comb


def catalan(k):
    """C_k via the convolution recurrence; binary planar trees with k+1 leaves."""
    if k == 0:
        return 1
    return sum(catalan(i) * catalan(k - 1 - i) for i in range(k))


def compositions(total, parts):
    """All tuples of `parts` naturals >= 1 summing to `total`."""
    if parts == 0:
        return [()] if total == 0 else []
    if parts == 1:
        return [(total,)] if total >= 1 else []
    out = []
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def weak_compositions(total, parts):
    """All tuples of `parts` naturals >= 0 summing to `total`."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(0, total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def trees_min2_by_vertices(n, v):
    """Planar trees with n leaves, exactly v vertices, every arity >= 2."""
    if n == 1:
        return 1 if v == 0 else 0
    if v == 0:
        return 0
    total = 0
    for k in range(2, n + 1):
        for comp in compositions(n, k):
            for vsplit in weak_compositions(v - 1, k):
                prod_count = 1
                for ni, vi in zip(comp, vsplit):
                    prod_count *= trees_min2_by_vertices(ni, vi)
                    if prod_count == 0:
                        break
                total += prod_count
    return total


def schroeder(n):
    """Planar trees with n leaves and every vertex of arity >= 2."""
    return sum(trees_min2_by_vertices(n, v) for v in range(0, n))


def f_vector_oracle(n):
    """Associahedron face counts by increasing dimension, via the vertex DP.

    A face of dimension d corresponds to a tree with n leaves and
    n - 1 - d vertices, all arities >= 2.
    """
    if n == 1:
        return (1,)
    counts = []
    for dim in range(0, n - 1):
        counts.append(trees_min2_by_vertices(n, n - 1 - dim))
    return tuple(counts)


@lru_cache(maxsize=None)
def trees_any_by_vertices(n, v):
    """Planar trees with n leaves, exactly v vertices, every arity >= 1."""
    if n == 1 and v == 0:
        return 1
    if v <= 0:
        return 0
    total = 0
    for k in range(1, n + 1):
        for comp in compositions(n, k):
            for vsplit in weak_compositions(v - 1, k):
                prod_count = 1
                for ni, vi in zip(comp, vsplit):
                    prod_count *= trees_any_by_vertices(ni, vi)
                    if prod_count == 0:
                        break
                total += prod_count
    return total


def trees_any_up_to_vertices(n, max_vertices):
    return sum(trees_any_by_vertices(n, v) for v in range(0, max_vertices + 1))


def tr_oracle(m, n):
    """Closed pearl trees with m leaves, pearl arity n, other arities >= 2.

    Decomposition: what sits above the pearl is a composition of the
    available leaves into n parts, each part a single leaf (size 1) or a
    corolla (size >= 2); below the pearl sits either nothing or one vertex
    carrying c >= 1 extra leaves split as (a, b) around the pearl.
    """

    def above(m2):
        if n == 0:
            return 1 if m2 == 0 else 0
        if m2 < n:
            return 0
        return comb(m2 - 1, n - 1)

    total = above(m)
    for c in range(1, m + 1):
        total += (c + 1) * above(m - c)
    return total


def _above_weighted(m2, max_arity, n_colours):
    """Pearl-corolla tops over m2 leaves: sum over pearl arities <= max_arity
    of compositions into parts of size 1 (leaf) or 2..max_arity (a top
    vertex, one free inner edge colour each)."""
    total = 0
    for n in range(0, max_arity + 1):
        if n == 0:
            if m2 == 0:
                total += 1
            continue
        for comp in compositions(m2, n):
            if all(p == 1 or 2 <= p <= max_arity for p in comp):
                tops = sum(1 for p in comp if p >= 2)
                total += n_colours ** tops
    return total


def pearl_count_oracle(m, max_arity, n_colours):
    """Pearl trees with m leaves, non-pearl arities in 2..max_arity, free
    inner-edge colours from a set of size n_colours."""
    total = _above_weighted(m, max_arity, n_colours)
    for c in range(1, m + 1):
        if c + 2 > max_arity + 1:
            break
        # below vertex of arity a + b + 1 <= max_arity, one free inner edge
        total += (c + 1) * _above_weighted(m - c, max_arity, n_colours) * n_colours
    return total


def section_count_oracle(m, max_arity, n_colours):
    """Section trees with m leaves, non-pearl arities in 2..max_arity."""
    total = _above_weighted(m, max_arity, n_colours)  # single pearl at root
    for k in range(2, max_arity + 1):
        for comp in weak_compositions(m, k):
            prod_count = 1
            for mi in comp:
                prod_count *= _above_weighted(mi, max_arity, n_colours) * n_colours
                if prod_count == 0:
                    break
            total += prod_count
    return total


def component_classes(nodes, edges):
    """Connected components by breadth-first search; the quotient oracle."""
    adjacency = {node: [] for node in nodes}
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    seen = set()
    classes = []
    for node in nodes:
        if node in seen:
            continue
        queue = deque([node])
        seen.add(node)
        block = []
        while queue:
            current = queue.popleft()
            block.append(current)
            for other in adjacency[current]:
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
        classes.append(frozenset(block))
    return classes


def component_count(nodes, edges):
    return len(component_classes(nodes, edges))


def endo_count(in_sizes, out_size):
    """Set functions from a product of finite sets to a finite set."""
    domain = 1
    for s in in_sizes:
        domain *= s
    return out_size ** domain


if __name__ == "__main__":
    assert [catalan(k) for k in range(6)] == [1, 1, 2, 5, 14, 42]
    assert [schroeder(n) for n in range(1, 7)] == [1, 1, 3, 11, 45, 197]
    assert f_vector_oracle(4) == (5, 5, 1)
    assert f_vector_oracle(5) == (14, 21, 9, 1)
    assert sum((-1) ** d * c for d, c in enumerate(f_vector_oracle(6))) == 1
    assert tr_oracle(0, 0) == 1 and tr_oracle(3, 3) == 1 and tr_oracle(2, 0) == 3
    assert component_count([1, 2, 3], [(1, 2)]) == 2
    assert endo_count((2,), 2) == 4
    print("oracle self-checks passed")
