"""Stable Feynman graphs.

A stable graph has genus-labelled vertices, edges given as pairs of
half-edges, and tails (unmatched half-edges).  Stability: genus-0 vertices
have valence >= 3, genus-1 vertices have valence >= 1.  The edge list order
doubles as the edge ordering (t_1, ..., t_k live on edges by position) and
each pair (h1, h2) fixes an orientation; weight values must not depend on
either choice, which the weight tests verify.

Automorphisms are half-edge permutations preserving the vertex partition
(up to genus-preserving vertex relabeling), the edge pairing, and the tail
set; tails are unlabeled.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache


class GraphStructureError(ValueError):
    """Malformed incidence (dangling half-edge, bad indices, reused half-edge)."""


class SizeLimitError(RuntimeError):
    """Brute-force search cap exceeded."""


@dataclass(frozen=True)
class StableGraph:
    genus: tuple
    vertex_of: tuple        # half-edge id -> vertex id
    edges: tuple            # ((h1, h2), ...); list position is the edge index

    def __post_init__(self):
        nv = len(self.genus)
        nh = len(self.vertex_of)
        for g in self.genus:
            if not (isinstance(g, int) and g >= 0):
                raise GraphStructureError("vertex genus must be a nonnegative integer")
        for v in self.vertex_of:
            if not (0 <= v < nv):
                raise GraphStructureError(f"half-edge attached to unknown vertex {v}")
        seen = set()
        for h1, h2 in self.edges:
            for h in (h1, h2):
                if not (0 <= h < nh):
                    raise GraphStructureError(f"edge references unknown half-edge {h}")
                if h in seen:
                    raise GraphStructureError(f"half-edge {h} belongs to two edges")
                seen.add(h)
            if h1 == h2:
                raise GraphStructureError("an edge must join two distinct half-edges")

    # -- basic accessors ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.genus)

    @property
    def n_half_edges(self) -> int:
        return len(self.vertex_of)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def tails(self) -> tuple:
        matched = {h for e in self.edges for h in e}
        return tuple(h for h in range(self.n_half_edges) if h not in matched)

    def half_edges_at(self, v: int) -> tuple:
        return tuple(h for h, w in enumerate(self.vertex_of) if w == v)

    def valence(self, v: int) -> int:
        return sum(1 for w in self.vertex_of if w == v)

    def tails_at(self, v: int) -> tuple:
        matched = {h for e in self.edges for h in e}
        return tuple(h for h, w in enumerate(self.vertex_of) if w == v and h not in matched)

    def edge_vertices(self, e: int) -> tuple:
        h1, h2 = self.edges[e]
        return self.vertex_of[h1], self.vertex_of[h2]

    def is_loop(self, e: int) -> bool:
        u, v = self.edge_vertices(e)
        return u == v

    # -- multigraph structure ----------------------------------------------

    def structure(self):
        """(loops per vertex, multiplicity dict {(u,v): m} with u < v, tails per vertex)."""
        nv = self.n_vertices
        loops = [0] * nv
        mult: dict = {}
        for e in range(self.n_edges):
            u, v = self.edge_vertices(e)
            if u == v:
                loops[u] += 1
            else:
                key = (min(u, v), max(u, v))
                mult[key] = mult.get(key, 0) + 1
        matched = {h for e in self.edges for h in e}
        tails = [0] * nv
        for h, v in enumerate(self.vertex_of):
            if h not in matched:
                tails[v] += 1
        return tuple(loops), mult, tuple(tails)

    def components(self):
        """List of vertex-index frozensets."""
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(self.n_edges):
            u, v = self.edge_vertices(e)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), set()).add(v)
        return [frozenset(s) for s in groups.values()]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def normalized(self) -> "StableGraph":
        """Relabel half-edges so they are grouped by vertex in slot order."""
        order = sorted(range(self.n_half_edges), key=lambda h: (self.vertex_of[h], h))
        newid = {h: i for i, h in enumerate(order)}
        return StableGraph(
            self.genus,
            tuple(self.vertex_of[h] for h in order),
            tuple((newid[a], newid[b]) for a, b in self.edges),
        )


# ---------------------------------------------------------------------------
# constructors


def from_structure(genus, mult=None, loops=None, tails=None) -> StableGraph:
    """Build a graph from multigraph data.  Half-edges are laid out vertex by
    vertex (tails first, then loop ends, then multi-edge ends); edges are
    ordered loops-first by vertex, then pairs (u, v) lexicographically."""
    nv = len(genus)
    mult = dict(mult or {})
    loops = list(loops or [0] * nv)
    tails = list(tails or [0] * nv)
    for (u, v), m in mult.items():
        if not (0 <= u < v < nv and m > 0):
            raise GraphStructureError("bad multiplicity entry")
    counts = [tails[v] + 2 * loops[v] + sum(m for (a, b), m in mult.items() if v in (a, b))
              for v in range(nv)]
    starts = [0]
    for v in range(nv):
        starts.append(starts[-1] + counts[v])
    vertex_of = []
    for v in range(nv):
        vertex_of.extend([v] * counts[v])
    cursor = [starts[v] + tails[v] for v in range(nv)]  # tails occupy first slots
    edges = []
    for v in range(nv):
        for _ in range(loops[v]):
            h1, h2 = cursor[v], cursor[v] + 1
            cursor[v] += 2
            edges.append((h1, h2))
    for (u, v) in sorted(mult):
        for _ in range(mult[(u, v)]):
            h1 = cursor[u]
            cursor[u] += 1
            h2 = cursor[v]
            cursor[v] += 1
            edges.append((h1, h2))
    return StableGraph(tuple(genus), tuple(vertex_of), tuple(edges))


def disjoint_union(a: StableGraph, b: StableGraph) -> StableGraph:
    ov, oh = a.n_vertices, a.n_half_edges
    return StableGraph(
        a.genus + b.genus,
        a.vertex_of + tuple(v + ov for v in b.vertex_of),
        a.edges + tuple((h1 + oh, h2 + oh) for h1, h2 in b.edges),
    )


# named examples used throughout the tests and the CLI
def bubble(tails_per_vertex=2, genus=(0, 0)) -> StableGraph:
    return from_structure(genus, mult={(0, 1): 2}, tails=[tails_per_vertex, tails_per_vertex])


def theta() -> StableGraph:
    return from_structure((0, 0), mult={(0, 1): 3})


def tadpole() -> StableGraph:
    """One trivalent genus-0 vertex with a loop and one tail."""
    return from_structure((0,), loops=[1], tails=[1])


def loopstick() -> StableGraph:
    """Two 4-valent vertices, one connecting edge, one loop; 3+1 tails."""
    return from_structure((0, 0), mult={(0, 1): 1}, loops=[0, 1], tails=[3, 1])


def triangle(tails=(1, 1, 1)) -> StableGraph:
    return from_structure((0, 0, 0), mult={(0, 1): 1, (1, 2): 1, (0, 2): 1}, tails=list(tails))


def path_tree(tails=(2, 2)) -> StableGraph:
    return from_structure((0,) * len(tails), mult={(i, i + 1): 1 for i in range(len(tails) - 1)},
                          tails=list(tails))


# ---------------------------------------------------------------------------
# invariants


def validate_stable(g: StableGraph):
    """Stability violations as (vertex, message); incidence errors raise at
    construction and are a different failure mode."""
    out = []
    for v in range(g.n_vertices):
        k = g.valence(v)
        if g.genus[v] == 0 and k < 3:
            out.append((v, f"genus-0 vertex has valence {k} < 3"))
        elif g.genus[v] == 1 and k < 1:
            out.append((v, "genus-1 vertex has valence 0"))
    return out


def betti(g: StableGraph) -> int:
    return g.n_edges - g.n_vertices + len(g.components())


def genus(g: StableGraph) -> int:
    return betti(g) + sum(g.genus)


def spanning_tree(g: StableGraph) -> tuple:
    """Edge ids of the lowest-edge-index spanning tree (Kruskal order)."""
    if not g.is_connected():
        raise GraphStructureError("spanning tree needs a connected graph")
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for e in range(g.n_edges):
        u, v = g.edge_vertices(e)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(e)
    return tuple(tree)


def tree_path(g: StableGraph, tree, u: int, v: int):
    """Signed edge path from u to v inside the tree: x_u - x_v =
    sum of sign * y_e over the path, with y_e = x_{v1(e)} - x_{v2(e)}."""
    adj: dict = {w: [] for w in range(g.n_vertices)}
    for e in tree:
        a, b = g.edge_vertices(e)
        adj[a].append((b, e, +1))   # traversing a->b contributes +y_e if a = v1(e)
        adj[b].append((a, e, -1))
    # BFS from u
    prev = {u: None}
    queue = [u]
    while queue:
        x = queue.pop(0)
        if x == v:
            break
        for (y, e, s) in adj[x]:
            if y not in prev:
                prev[y] = (x, e, s)
                queue.append(y)
    if v not in prev:
        raise GraphStructureError("vertices not connected in the given tree")
    path = []
    x = v
    while prev[x] is not None:
        p, e, s = prev[x]
        path.append((e, s))
        x = p
    path.reverse()
    return path


# ---------------------------------------------------------------------------
# automorphisms


def automorphism_order(g: StableGraph, max_half_edges: int = 12) -> int:
    """Order of Aut(g) by brute-force search over half-edge bijections, pruned
    by the (genus, valence) vertex preorder.  Capped per connected component."""
    comp_of = {}
    for i, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = i
    sizes: dict = {}
    for h, v in enumerate(g.vertex_of):
        sizes[comp_of[v]] = sizes.get(comp_of[v], 0) + 1
    if any(s > max_half_edges for s in sizes.values()):
        raise SizeLimitError(
            f"component with {max(sizes.values())} half-edges exceeds cap {max_half_edges}")

    nh = g.n_half_edges
    partner = {}
    for h1, h2 in g.edges:
        partner[h1] = h2
        partner[h2] = h1
    order = sorted(range(nh), key=lambda h: (g.vertex_of[h], h))
    count = 0
    hmap = [-1] * nh
    used_h = [False] * nh
    vmap = [-1] * g.n_vertices
    vused = [False] * g.n_vertices
    val = [g.valence(v) for v in range(g.n_vertices)]

    def feasible(h, h2):
        # tail <-> tail, edge-half <-> edge-half
        if (h in partner) != (h2 in partner):
            return False
        v, w = g.vertex_of[h], g.vertex_of[h2]
        if vmap[v] == -1:
            if vused[w] or g.genus[v] != g.genus[w] or val[v] != val[w]:
                return False
        elif vmap[v] != w:
            return False
        if h in partner:
            p = partner[h]
            if hmap[p] != -1 and hmap[p] != partner[h2]:
                return False
        return True

    def rec(i):
        nonlocal count
        if i == nh:
            count += 1
            return
        h = order[i]
        for h2 in range(nh):
            if used_h[h2] or not feasible(h, h2):
                continue
            v, w = g.vertex_of[h], g.vertex_of[h2]
            newv = vmap[v] == -1
            hmap[h] = h2
            used_h[h2] = True
            if newv:
                vmap[v] = w
                vused[w] = True
            rec(i + 1)
            hmap[h] = -1
            used_h[h2] = False
            if newv:
                vmap[v] = -1
                vused[w] = False

    rec(0)
    return count


def automorphism_order_structural(g: StableGraph) -> int:
    """|Aut| as (structure-preserving vertex permutations) x local factors:
    parallel-edge swaps m!, loop swaps 2^l l!, tail swaps t!.  The kernel/image
    factorization of the restriction Aut -> Sym(V)."""
    loops, mult, tails = g.structure()
    nv = g.n_vertices
    kernel = 1
    for m in mult.values():
        kernel *= math.factorial(m)
    for v in range(nv):
        kernel *= 2 ** loops[v] * math.factorial(loops[v]) * math.factorial(tails[v])

    colors = [(g.genus[v], g.valence(v), loops[v], tails[v]) for v in range(nv)]

    def m_at(u, v):
        if u == v:
            return 0
        return mult.get((min(u, v), max(u, v)), 0)

    count = 0
    perm = [-1] * nv
    used = [False] * nv

    def rec(v):
        nonlocal count
        if v == nv:
            count += 1
            return
        for w in range(nv):
            if used[w] or colors[w] != colors[v]:
                continue
            if any(perm[u] != -1 and m_at(u, v) != m_at(perm[u], w) for u in range(v)):
                continue
            perm[v] = w
            used[w] = True
            rec(v + 1)
            perm[v] = -1
            used[w] = False

    rec(0)
    return kernel * count


# ---------------------------------------------------------------------------
# canonical form and enumeration


def _canonical_key_data(genus, loops, mult, tails):
    """Canonical key from raw multigraph data (dense adjacency, color
    refinement, then minimal encoding over orderings within color classes)."""
    nv = len(genus)
    adj = [[0] * nv for _ in range(nv)]
    for (u, v), m in mult.items():
        adj[u][v] = m
        adj[v][u] = m
    valence = [2 * loops[v] + tails[v] + sum(adj[v]) for v in range(nv)]
    colors = [(genus[v], valence[v], loops[v], tails[v]) for v in range(nv)]
    for _ in range(nv):
        newc = [
            (colors[v], tuple(sorted((adj[u][v], colors[u]) for u in range(nv) if adj[u][v])))
            for v in range(nv)
        ]
        ranks = {c: i for i, c in enumerate(sorted(set(newc)))}
        nxt = [ranks[c] for c in newc]
        if nxt == colors:
            break
        colors = nxt

    base = [(colors[v], genus[v], loops[v], tails[v]) for v in range(nv)]
    order_groups = sorted(range(nv), key=lambda v: base[v])
    # per-position cell: (genus, loops, tails, adjacency row to earlier picks);
    # lexicographic minimum over admissible orderings, with prefix pruning
    best = None
    used = [False] * nv
    chosen = []
    prefix = []

    def rec(tight):
        # tight: the current prefix equals best's prefix so far
        nonlocal best
        pos = len(chosen)
        if pos == nv:
            enc = tuple(prefix)
            if best is None or enc < best:
                best = enc
            return
        cands = [v for v in order_groups if not used[v]]
        lowest = base[cands[0]]
        for v in cands:
            if base[v] != lowest:
                break
            cell = (genus[v], loops[v], tails[v], tuple(adj[v][u] for u in chosen))
            if tight and best is not None and cell > best[pos]:
                continue
            used[v] = True
            chosen.append(v)
            prefix.append(cell)
            rec(tight and best is not None and cell == best[pos])
            prefix.pop()
            chosen.pop()
            used[v] = False

    rec(True)
    n_edges = sum(loops) + sum(mult.values())
    return (nv, n_edges, sum(tails)) + best if best is not None else (nv, n_edges, sum(tails))


def canonical_key(g: StableGraph):
    """Minimal lexicographic incidence encoding over admissible vertex orderings.

    Orderings are restricted to refinement classes of an iterated neighbor-color
    refinement, which keeps the search small at desk scale."""
    loops, mult, tails = g.structure()
    return _canonical_key_data(g.genus, loops, mult, tails)


def _structures_for_types(vertex_types, n_edges):
    """All (loops, mult) layouts over the given (genus, valence) multiset with
    exactly n_edges edges; tails fill the remaining slots.  Incremental free
    slot tracking; the global free-capacity bound prunes dead branches."""
    nv = len(vertex_types)
    caps = [k for (_g, k) in vertex_types]
    results = []
    loops = [0] * nv
    mult: dict = {}
    free = list(caps)

    def rec_pairs(u, v, remaining):
        if remaining == 0:
            results.append((tuple(loops), dict(mult)))
            return
        if u >= nv - 1:
            return
        if sum(free[u:]) < 2 * remaining:
            return
        if free[u] == 0 or v == nv:
            rec_pairs(u + 1, u + 2, remaining)
            return
        for m in range(0, min(free[u], free[v], remaining) + 1):
            if m:
                mult[(u, v)] = m
                free[u] -= m
                free[v] -= m
            rec_pairs(u, v + 1, remaining - m)
            if m:
                free[u] += m
                free[v] += m
        mult.pop((u, v), None)

    def rec_loops(u, remaining):
        if u == nv:
            if sum(free) >= 2 * remaining:
                rec_pairs(0, 1, remaining)
            return
        for l in range(0, min(free[u] // 2, remaining) + 1):
            loops[u] = l
            free[u] -= 2 * l
            rec_loops(u + 1, remaining - l)
            free[u] += 2 * l
        loops[u] = 0

    rec_loops(0, n_edges)
    return results


def _stable_types(max_genus, max_valence):
    out = []
    for g in range(max_genus + 1):
        kmin = 3 if g == 0 else (1 if g == 1 else 0)
        for k in range(kmin, max_valence + 1):
            out.append((g, k))
    return out


def _connected_structure(nv, mult) -> bool:
    if nv == 1:
        return True
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v) in mult:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    root = find(0)
    return all(find(v) == root for v in range(nv))


@lru_cache(maxsize=None)
def _enumerate_connected_cached(pool, n_tails, max_edges, max_genus, max_vertices):
    found: dict = {}
    for n_edges in range(max_edges + 1):
        vmax = max(1, n_edges + 1) if max_vertices is None else min(n_edges + 1, max_vertices)
        if n_edges == 0:
            vmax = 1  # connected with no edges
        for nv in range(1, vmax + 1):
            b = n_edges - nv + 1
            if b < 0:
                continue
            # non-increasing type sequences of length nv
            for types in itertools.combinations_with_replacement(pool, nv):
                if sum(k for (_g, k) in types) != 2 * n_edges + n_tails:
                    continue
                if sum(g for (g, _k) in types) + b > max_genus:
                    continue
                genus_list = tuple(g for (g, _k) in types)
                for loops, mult in _structures_for_types(types, n_edges):
                    if not _connected_structure(nv, mult):
                        continue
                    tails = [types[v][1] - 2 * loops[v]
                             - sum(m for (a, bb), m in mult.items() if v in (a, bb))
                             for v in range(nv)]
                    key = _canonical_key_data(genus_list, loops, mult, tails)
                    if key not in found:
                        found[key] = from_structure(genus_list, mult=mult,
                                                    loops=loops, tails=tails)
    return tuple(found[k] for k in sorted(found))


def enumerate_connected(type_pool, n_tails, max_edges, max_genus, max_vertices=None):
    """One representative per isomorphism class of connected stable graphs with
    vertex types drawn from type_pool, exactly n_tails tails, at most max_edges
    edges, and total genus at most max_genus.  Deterministic order; memoized."""
    pool = tuple(sorted(set(type_pool)))
    return list(_enumerate_connected_cached(pool, n_tails, max_edges, max_genus, max_vertices))


def enumerate_connected_stable(max_genus: int, tails: int, max_edges: int):
    """Spec surface: exhaustive search over all stable vertex types."""
    max_valence = 2 * max_edges + tails
    pool = _stable_types(max_genus, max_valence)
    return enumerate_connected(pool, tails, max_edges, max_genus)


# ---------------------------------------------------------------------------
# surgery


@dataclass(frozen=True)
class SurgeryResult:
    gamma_prime: StableGraph | None
    shared_tails: tuple          # T(gamma', gamma): tail half-edge ids of gamma
    f_edge_ids: tuple            # F(gamma', gamma): edge ids of gamma
    frontier_vertices: tuple     # V(gamma', gamma)
    quotient: StableGraph
    distinguished_vertex: int | None
    gp_vertex_map: dict          # original vertex -> gamma_prime vertex
    quotient_vertex_map: dict    # original vertex -> quotient vertex
    quotient_edge_ids: tuple     # original edge ids, in quotient edge order
    gp_edge_ids: tuple           # original edge ids, in gamma_prime edge order


def subgraph_surgery(g: StableGraph, edge_subset) -> SurgeryResult:
    """Split along a set of edge ids: the spanned subgraph gamma' (other
    half-edges at its vertices become tails), the frontier data, and the
    quotient with one distinguished vertex absorbing all of gamma'."""
    subset = sorted(set(edge_subset))
    for e in subset:
        if not (0 <= e < g.n_edges):
            raise GraphStructureError(f"edge id {e} out of range")
    gp_vertices = sorted({v for e in subset for v in g.edge_vertices(e)})
    gp_vset = set(gp_vertices)

    if not subset:
        return SurgeryResult(None, (), (), (), g, None, {},
                             {v: v for v in range(g.n_vertices)},
                             tuple(range(g.n_edges)), ())

    # gamma': spanned subgraph; every non-subset half-edge at a gp vertex is a tail
    gp_vmap = {v: i for i, v in enumerate(gp_vertices)}
    gp_half = [h for h in range(g.n_half_edges) if g.vertex_of[h] in gp_vset]
    gp_hmap = {h: i for i, h in enumerate(gp_half)}
    gamma_prime = StableGraph(
        tuple(g.genus[v] for v in gp_vertices),
        tuple(gp_vmap[g.vertex_of[h]] for h in gp_half),
        tuple((gp_hmap[a], gp_hmap[b]) for e in subset for (a, b) in [g.edges[e]]),
    )

    g_tails = set(g.tails)
    shared = tuple(h for h in gp_half if h in g_tails)
    f_edges = tuple(e for e in range(g.n_edges) if e not in subset
                    and (g.edge_vertices(e)[0] in gp_vset or g.edge_vertices(e)[1] in gp_vset))
    frontier = tuple(sorted({v for e in f_edges for v in g.edge_vertices(e)} - gp_vset))

    # quotient: distinguished vertex 0 absorbs gp_vertices; others follow in order
    outside = [v for v in range(g.n_vertices) if v not in gp_vset]
    q_vmap = {v: 0 for v in gp_vset}
    q_vmap.update({v: i + 1 for i, v in enumerate(outside)})
    keep_edges = [e for e in range(g.n_edges) if e not in subset]
    # half-edges of the quotient: all half-edges not consumed by subset edges
    consumed = {h for e in subset for h in g.edges[e]}
    q_half = [h for h in range(g.n_half_edges) if h not in consumed]
    q_hmap = {h: i for i, h in enumerate(q_half)}
    dist_genus = genus(gamma_prime)
    q_genus = [dist_genus] + [g.genus[v] for v in outside]
    quotient = StableGraph(
        tuple(q_genus),
        tuple(q_vmap[g.vertex_of[h]] for h in q_half),
        tuple((q_hmap[a], q_hmap[b]) for e in keep_edges for (a, b) in [g.edges[e]]),
    )
    return SurgeryResult(gamma_prime, shared, f_edges, frontier, quotient, 0,
                         gp_vmap, q_vmap, tuple(keep_edges), tuple(subset))


# ---------------------------------------------------------------------------
# text serialization


def to_text(g: StableGraph) -> str:
    g = g.normalized()
    slot = {}
    per_vertex: dict = {}
    for h, v in enumerate(g.vertex_of):
        slot[h] = per_vertex.get(v, 0)
        per_vertex[v] = slot[h] + 1

    def token(h):
        return f"v{g.vertex_of[h]}.{slot[h]}"

    lines = [f"v{v} g={g.genus[v]}" for v in range(g.n_vertices)]
    lines += [f"e{i} {token(a)} {token(b)}" for i, (a, b) in enumerate(g.edges)]
    lines += [f"t{i} {token(h)}" for i, h in enumerate(g.tails)]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> StableGraph:
    genus = {}
    edges = []
    tails = []
    for line in text.strip().splitlines():
        parts = line.split()
        if not parts:
            continue
        tag = parts[0]
        if tag.startswith("v"):
            genus[int(tag[1:])] = int(parts[1].split("=")[1])
        elif tag.startswith("e"):
            edges.append((parts[1], parts[2]))
        elif tag.startswith("t"):
            tails.append(parts[1])
        else:
            raise GraphStructureError(f"unrecognized line {line!r}")
    nv = len(genus)
    genus_list = [genus[v] for v in range(nv)]
    # valence per vertex = max slot + 1 over all tokens
    valence = [0] * nv

    def parse(token):
        vpart, spart = token.split(".")
        v, s = int(vpart[1:]), int(spart)
        valence[v] = max(valence[v], s + 1)
        return v, s

    e_tok = [(parse(a), parse(b)) for a, b in edges]
    t_tok = [parse(t) for t in tails]
    starts = [0]
    for v in range(nv):
        starts.append(starts[-1] + valence[v])

    def hid(vs):
        v, s = vs
        return starts[v] + s

    g_obj = StableGraph(tuple(genus_list),
                        tuple(v for v in range(nv) for _ in range(valence[v])),
                        tuple((hid(a), hid(b)) for a, b in e_tok))
    expect_tails = set(hid(t) for t in t_tok)
    if set(g_obj.tails) != expect_tails:
        raise GraphStructureError("tail lines inconsistent with edge lines")
    return g_obj
