"""Finite simple graphs, gadget constructors, and structural validators.

Vertices are dense integer indices ``0..n-1``.  Every constructor numbers new
internal vertices deterministically: host vertices keep their indices, then
per-edge blocks are appended in sorted edge order.  Repeated runs therefore
produce byte-identical outputs, which golden tests rely on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

__all__ = [
    "Graph",
    "RootedGraph",
    "ReplacementSpec",
    "TreeDecomposition",
    "Theorem12Case",
    "Theorem12Classification",
    "complete_graph",
    "complete_multipartite",
    "path_graph",
    "cycle_graph",
    "generalized_theta",
    "flower",
    "subdivide",
    "replace_edges",
    "replace_edges_nonuniform",
    "semidirect_product",
    "disjoint_union",
    "classify_theorem12",
    "odd_theta_decomposition",
    "find_isomorphism",
    "is_isomorphic",
    "canonical_form",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus a sorted tuple of edges.

    ``n == 0`` is permitted and denotes the empty graph (the identity for
    disjoint unions).  Loops, duplicate edges, and out-of-range endpoints are
    rejected at construction.
    """

    n: int
    edges: tuple = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError("vertex count must be a nonnegative integer")
        seen = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {tuple(edge)} out of range for n={self.n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict:
        adj = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> tuple:
        degs = [0] * self.n
        for u, v in self.edges:
            degs[u] += 1
            degs[v] += 1
        return tuple(degs)

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in set(self.edges)

    def is_bipartite(self) -> bool:
        color = {}
        adj = self.adjacency()
        for start in range(self.n):
            if start in color:
                continue
            color[start] = 0
            queue = [start]
            while queue:
                w = queue.pop()
                for x in adj[w]:
                    if x not in color:
                        color[x] = 1 - color[w]
                        queue.append(x)
                    elif color[x] == color[w]:
                        return False
        return True

    def relabel(self, perm) -> "Graph":
        """Apply a vertex permutation given as a sequence (old index -> new)."""
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def without_edge(self, u: int, v: int) -> "Graph":
        key = (u, v) if u < v else (v, u)
        if key not in set(self.edges):
            raise ValueError(f"edge {key} not present")
        return Graph(self.n, tuple(e for e in self.edges if e != key))

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Graph":
        return cls(int(data["n"]), tuple(tuple(e) for e in data["edges"]))


def complete_graph(h: int) -> Graph:
    return Graph(h, tuple(itertools.combinations(range(h), 2)))


def complete_multipartite(sizes) -> Graph:
    """Complete multipartite graph with consecutive index blocks as parts."""
    sizes = list(sizes)
    if any(s <= 0 for s in sizes):
        raise ValueError("part sizes must be positive")
    bounds = []
    start = 0
    for s in sizes:
        bounds.append(range(start, start + s))
        start += s
    edges = []
    for i, j in itertools.combinations(range(len(sizes)), 2):
        edges.extend((u, v) for u in bounds[i] for v in bounds[j])
    return Graph(start, tuple(edges))


def path_graph(length: int) -> Graph:
    """Path with ``length`` edges on vertices 0..length."""
    if length < 0:
        raise ValueError("path length must be nonnegative")
    return Graph(length + 1, tuple((i, i + 1) for i in range(length)))


def cycle_graph(length: int) -> Graph:
    if length < 3:
        raise ValueError("cycle length must be at least 3")
    edges = [(i, i + 1) for i in range(length - 1)] + [(length - 1, 0)]
    return Graph(length, tuple(edges))


# ---------------------------------------------------------------------------
# Isomorphism machinery (backtracking with degree-profile prefilter).
# Adequate for the desk-scale gadgets built here; not a general-purpose solver.
# ---------------------------------------------------------------------------

def _signatures(g: Graph):
    adj = g.adjacency()
    degs = g.degrees()
    return [
        (degs[v], tuple(sorted(degs[w] for w in adj[v])))
        for v in range(g.n)
    ]


def find_isomorphism(g1: Graph, g2: Graph, fixed: dict | None = None):
    """Search for an isomorphism g1 -> g2 extending ``fixed``; None if absent."""
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return None
    sig1, sig2 = _signatures(g1), _signatures(g2)
    if sorted(sig1) != sorted(sig2):
        return None
    fixed = dict(fixed or {})
    for v, w in fixed.items():
        if sig1[v] != sig2[w]:
            return None
    candidates = {
        v: [w for w in range(g2.n) if sig2[w] == sig1[v]] for v in range(g1.n)
    }
    adj1 = g1.adjacency()
    adj2 = g2.adjacency()

    # Static order: most constrained vertices first, fixed ones up front.
    order = sorted(
        (v for v in range(g1.n) if v not in fixed),
        key=lambda v: (len(candidates[v]), -len(adj1[v]), v),
    )
    order = list(fixed) + order

    mapping = {}
    used = set()

    def consistent(v, w):
        for u, x in mapping.items():
            if (u in adj1[v]) != (x in adj2[w]):
                return False
        return True

    def extend(pos):
        if pos == len(order):
            return True
        v = order[pos]
        choices = [fixed[v]] if v in fixed else candidates[v]
        for w in choices:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(pos + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    if extend(0):
        return dict(mapping)
    return None


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return find_isomorphism(g1, g2) is not None


_CANONICAL_MAX = 8


def canonical_form(g: Graph) -> tuple:
    """Lexicographically minimal edge tuple over all vertex relabelings.

    Brute force over permutations, so limited to n <= 8; use
    ``find_isomorphism`` for pairwise checks on larger instances.
    """
    if g.n > _CANONICAL_MAX:
        raise ValueError(f"canonical_form limited to {_CANONICAL_MAX} vertices")
    best = None
    for perm in itertools.permutations(range(g.n)):
        key = tuple(sorted(
            (perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])
            for u, v in g.edges
        ))
        if best is None or key < best:
            best = key
    return (g.n, best)


@dataclass(frozen=True)
class RootedGraph:
    """Graph with an ordered pair of distinct roots.

    Construction validates that some automorphism swaps the two roots, which
    makes the root orientation irrelevant in edge replacements and keeps
    counting kernels symmetric.
    """

    graph: Graph
    roots: tuple

    def __post_init__(self):
        r1, r2 = self.roots
        object.__setattr__(self, "roots", (r1, r2))
        if r1 == r2:
            raise ValueError("roots must be distinct")
        if not (0 <= r1 < self.graph.n and 0 <= r2 < self.graph.n):
            raise ValueError("roots out of range")
        if find_isomorphism(self.graph, self.graph, fixed={r1: r2, r2: r1}) is None:
            raise ValueError("no automorphism swapping the two roots")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges

    def to_json_dict(self) -> dict:
        d = self.graph.to_json_dict()
        d["roots"] = list(self.roots)
        return d

    @classmethod
    def from_json_dict(cls, data: dict) -> "RootedGraph":
        return cls(Graph.from_json_dict(data), tuple(data["roots"]))


# ---------------------------------------------------------------------------
# Gadget constructors.
# ---------------------------------------------------------------------------

def generalized_theta(lengths, parity: str = "any") -> RootedGraph:
    """Internally disjoint paths of the given lengths between two roots.

    Roots are vertices 0 and 1; internal path vertices follow in input order.
    At most one length may equal 1 (two would create a multi-edge).  With
    parity "even" or "odd" every length must have that parity.
    """
    lens = [int(x) for x in lengths]
    if not lens:
        raise ValueError("at least one path length required")
    if any(x < 1 for x in lens):
        raise ValueError("path lengths must be at least 1")
    if sum(1 for x in lens if x == 1) > 1:
        raise ValueError("duplicate length-1 path would create a multi-edge")
    if parity == "even" and any(x % 2 for x in lens):
        raise ValueError("parity violation: odd length in an even theta")
    if parity == "odd" and any(x % 2 == 0 for x in lens):
        raise ValueError("parity violation: even length in an odd theta")
    if parity not in ("even", "odd", "any"):
        raise ValueError(f"unknown parity {parity!r}")
    edges = []
    nxt = 2
    for length in lens:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return RootedGraph(Graph(nxt, tuple(edges)), (0, 1))


def flower(cycle_lengths) -> Graph:
    """Cycles of the given lengths sharing exactly one hub vertex (vertex 0)."""
    lens = [int(x) for x in cycle_lengths]
    if not lens:
        raise ValueError("at least one cycle length required")
    if any(x < 3 for x in lens):
        raise ValueError("cycle lengths must be at least 3")
    edges = []
    nxt = 1
    for length in lens:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 0))
    return Graph(nxt, tuple(edges))


def subdivide(graph: Graph, times) -> Graph:
    """Replace each edge by a path with ``times`` new internal vertices.

    ``times`` is a uniform nonnegative integer or a map covering exactly the
    edge set.  New vertices are appended per edge in sorted edge order.
    """
    if isinstance(times, int):
        if times < 0:
            raise ValueError("subdivision count must be nonnegative")
        mapping = {e: times for e in graph.edges}
    else:
        mapping = {}
        for key, t in dict(times).items():
            u, v = key
            norm = (u, v) if u < v else (v, u)
            if norm in mapping:
                raise ValueError(f"duplicate edge key {norm} in subdivision map")
            if int(t) < 0:
                raise ValueError("subdivision count must be nonnegative")
            mapping[norm] = int(t)
        if set(mapping) != set(graph.edges):
            raise ValueError("subdivision map must cover exactly the edge set")
    edges = []
    nxt = graph.n
    for u, v in graph.edges:
        t = mapping[(u, v)]
        prev = u
        for _ in range(t):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(nxt, tuple(edges))


def replace_edges(host: Graph, gadget: RootedGraph) -> Graph:
    """Substitute a fresh copy of ``gadget`` for every host edge.

    The gadget roots land on the edge endpoints; internal copies are pairwise
    disjoint.  The root-swap automorphism (validated by RootedGraph) makes the
    orientation of each substitution irrelevant.
    """
    r1, r2 = gadget.roots
    others = [w for w in range(gadget.graph.n) if w not in (r1, r2)]
    edges = []
    nxt = host.n
    for u, v in host.edges:
        m = {r1: u, r2: v}
        for w in others:
            m[w] = nxt
            nxt += 1
        for a, b in gadget.graph.edges:
            edges.append((m[a], m[b]))
    return Graph(nxt, tuple(edges))


def replace_edges_nonuniform(host: Graph, spec: "ReplacementSpec") -> Graph:
    """Replace each host edge by its own bundle of internally disjoint paths."""
    if not spec.matches(host):
        raise ValueError("replacement spec does not match the host graph")
    edges = []
    nxt = host.n
    for (u, v), bundle in zip(host.edges, spec.per_edge_lengths):
        for k, count in bundle:
            for _ in range(count):
                if k == 1:
                    edges.append((u, v))
                else:
                    prev = u
                    for _ in range(k - 1):
                        edges.append((prev, nxt))
                        prev = nxt
                        nxt += 1
                    edges.append((prev, v))
    return Graph(nxt, tuple(edges))


def semidirect_product(h1: Graph, independent_set, a: int, h2: Graph,
                       subdivision_k: int = 1) -> Graph:
    """Glue v(H2) copies of H1 along an independent set, wire H2 on the a-copies.

    The copies share the vertices of ``independent_set`` and are disjoint
    otherwise.  Each H2 edge is placed between the corresponding copies of
    ``a`` and then subdivided ``2*subdivision_k - 1`` times, which makes the
    result bipartite whenever H1 is.

    Vertex numbering: shared vertices first (sorted), then per-copy blocks of
    the remaining H1 vertices (sorted), then subdivision blocks in sorted H2
    edge order.
    """
    shared = sorted(set(independent_set))
    if any(not (0 <= w < h1.n) for w in shared):
        raise ValueError("independent set contains invalid vertices")
    if not (0 <= a < h1.n):
        raise ValueError("vertex a out of range")
    if a in shared:
        raise ValueError("vertex a must not belong to the independent set")
    shared_set = set(shared)
    for u, v in h1.edges:
        if u in shared_set and v in shared_set:
            raise ValueError("independent set spans an edge of the first factor")
    if subdivision_k < 1:
        raise ValueError("subdivision parameter must be at least 1")

    shared_idx = {w: i for i, w in enumerate(shared)}
    others = [w for w in range(h1.n) if w not in shared_set]
    edges = []
    a_copies = []
    nxt = len(shared)
    for _ in range(h2.n):
        block = {w: nxt + i for i, w in enumerate(others)}
        nxt += len(others)

        def image(w, block=block):
            return shared_idx[w] if w in shared_set else block[w]

        for u, v in h1.edges:
            edges.append((image(u), image(v)))
        a_copies.append(image(a))
    t = 2 * subdivision_k - 1
    for p, q in h2.edges:
        prev = a_copies[p]
        for _ in range(t):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, a_copies[q]))
    return Graph(nxt, tuple(edges))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shifted = tuple((u + g1.n, v + g1.n) for u, v in g2.edges)
    return Graph(g1.n + g2.n, g1.edges + shifted)


# ---------------------------------------------------------------------------
# Non-uniform replacement specs and their classifier.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReplacementSpec:
    """Per-edge multisets of path lengths for a non-uniform edge replacement.

    ``per_edge_lengths`` is aligned with ``host_edges``; each entry is a tuple
    of ``(length, count)`` pairs sorted by length.  A length-1 path stands for
    keeping the edge itself, so its count is capped at 1.
    """

    host_n: int
    host_edges: tuple
    per_edge_lengths: tuple

    def __post_init__(self):
        host = Graph(self.host_n, self.host_edges)  # validates the edge list
        object.__setattr__(self, "host_edges", host.edges)
        if len(self.per_edge_lengths) != len(self.host_edges):
            raise ValueError("one length multiset required per host edge")
        norm = []
        for bundle in self.per_edge_lengths:
            counts = {}
            for k, c in bundle:
                k, c = int(k), int(c)
                if k < 1:
                    raise ValueError("path lengths must be at least 1")
                if c < 0:
                    raise ValueError("path counts must be nonnegative")
                counts[k] = counts.get(k, 0) + c
            if counts.get(1, 0) > 1:
                raise ValueError("at most one length-1 path per edge")
            norm.append(tuple(sorted((k, c) for k, c in counts.items() if c > 0)))
        object.__setattr__(self, "per_edge_lengths", tuple(norm))

    def totals(self) -> dict:
        """Total path count per length, summed over host edges."""
        out = {}
        for bundle in self.per_edge_lengths:
            for k, c in bundle:
                out[k] = out.get(k, 0) + c
        return dict(sorted(out.items()))

    def alphas(self) -> dict:
        """Per-length totals divided by C(host_n, 2), as exact rationals."""
        pairs = comb(self.host_n, 2)
        if pairs == 0:
            raise ValueError("alpha values need a host with at least 2 vertices")
        return {k: Fraction(c, pairs) for k, c in self.totals().items()}

    def total_edge_count(self) -> int:
        """Edge count of the replaced graph: sum over paths of their lengths."""
        return sum(k * c for k, c in self.totals().items())

    def matches(self, host: Graph) -> bool:
        return host.n == self.host_n and host.edges == self.host_edges

    @classmethod
    def uniform(cls, host: Graph, lengths) -> "ReplacementSpec":
        """Same multiset of path lengths on every host edge."""
        counts = {}
        for k in lengths:
            counts[int(k)] = counts.get(int(k), 0) + 1
        bundle = tuple(sorted(counts.items()))
        return cls(host.n, host.edges, tuple(bundle for _ in host.edges))

    @classmethod
    def from_length_maps(cls, host: Graph, maps) -> "ReplacementSpec":
        """Build from one {length: count} mapping per host edge, in edge order."""
        bundles = tuple(tuple(sorted(dict(m).items())) for m in maps)
        return cls(host.n, host.edges, bundles)

    def to_json_dict(self) -> dict:
        return {
            "n": self.host_n,
            "edges": [list(e) for e in self.host_edges],
            "lengths": [
                [{"k": k, "count": c} for k, c in bundle]
                for bundle in self.per_edge_lengths
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ReplacementSpec":
        edges = tuple(tuple(e) for e in data["edges"])
        if "n" in data:
            n = int(data["n"])
        else:
            n = 1 + max((max(e) for e in edges), default=-1)
        bundles = tuple(
            tuple((int(item["k"]), int(item["count"])) for item in bundle)
            for bundle in data["lengths"]
        )
        return cls(n, edges, bundles)


class Theorem12Case(str, Enum):
    DIVISIBLE = "CaseDivisible"
    SINGLE_LENGTH = "CaseSingleLength"
    NOT_COVERED = "NotCovered"


@dataclass(frozen=True)
class Theorem12Classification:
    case: Theorem12Case
    certificate: dict


def classify_theorem12(host: Graph, spec: ReplacementSpec) -> Theorem12Classification:
    """Decide which hypothesis a non-uniform even replacement satisfies.

    CaseDivisible: all lengths even and every per-length total divisible by
    C(h, 2).  CaseSingleLength: all lengths even, exactly one length class
    present, and its total at least C(h, 2).  CaseDivisible wins when both
    hold.  Otherwise NotCovered, with a certificate naming the offending
    length class (as k, where the class holds paths of length 2k).
    """
    if not spec.matches(host):
        raise ValueError("replacement spec does not match the host graph")
    totals = spec.totals()
    pairs = comb(host.n, 2)
    odd = sorted(k for k in totals if k % 2 == 1)
    if odd:
        return Theorem12Classification(
            Theorem12Case.NOT_COVERED,
            {"reason": "odd path length present", "length": odd[0]},
        )
    if all(c % pairs == 0 for c in totals.values()):
        alpha = {k: c // pairs for k, c in totals.items()}
        theta_lengths = [k for k, a in sorted(alpha.items()) for _ in range(a)]
        return Theorem12Classification(
            Theorem12Case.DIVISIBLE,
            {"alpha": alpha, "theta_lengths": theta_lengths},
        )
    if len(totals) == 1:
        (length, count), = totals.items()
        if count >= pairs:
            return Theorem12Classification(
                Theorem12Case.SINGLE_LENGTH,
                {"length": length, "k": length // 2,
                 "alpha": Fraction(count, pairs)},
            )
    bad = min(k for k, c in totals.items() if c % pairs != 0)
    return Theorem12Classification(
        Theorem12Case.NOT_COVERED,
        {"reason": "per-length total not divisible", "length": bad, "k": bad // 2},
    )


# ---------------------------------------------------------------------------
# Tree decompositions and the star-shaped decomposition of odd theta graphs.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeDecomposition:
    """Bags on a tree; validity against a graph is checked by ``validate``."""

    bags: tuple
    tree_edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(
            self, "tree_edges",
            tuple((min(e), max(e)) for e in self.tree_edges),
        )
        m = len(self.bags)
        for i, j in self.tree_edges:
            if not (0 <= i < m and 0 <= j < m) or i == j:
                raise ValueError("tree edge refers to invalid bag indices")
        if len(set(self.tree_edges)) != len(self.tree_edges):
            raise ValueError("duplicate tree edge")
        if len(self.tree_edges) != m - 1 or not self._connected(range(m)):
            raise ValueError("bag indices must form a tree")

    def _adj(self):
        adj = {i: set() for i in range(len(self.bags))}
        for i, j in self.tree_edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def _connected(self, nodes) -> bool:
        nodes = set(nodes)
        if not nodes:
            return True
        adj = self._adj()
        seen = set()
        stack = [next(iter(nodes))]
        while stack:
            i = stack.pop()
            if i in seen:
                continue
            seen.add(i)
            stack.extend(adj[i] & nodes - seen)
        return seen == nodes

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def validate(self, graph: Graph) -> None:
        """Raise ValueError unless all three decomposition axioms hold."""
        covered = set().union(*self.bags) if self.bags else set()
        missing = set(range(graph.n)) - covered
        if missing:
            raise ValueError(f"vertices not covered by any bag: {sorted(missing)}")
        for u, v in graph.edges:
            if not any(u in b and v in b for b in self.bags):
                raise ValueError(f"edge ({u}, {v}) not inside any bag")
        for v in range(graph.n):
            holding = {i for i, b in enumerate(self.bags) if v in b}
            if holding and not self._connected(holding):
                raise ValueError(f"bags containing vertex {v} are not connected")


def odd_theta_decomposition(lengths):
    """Odd generalized theta graph plus its star-shaped tree decomposition.

    Paths of the given odd lengths join roots s (vertex 0) and t.  The center
    bag holds a spider: an arm of the shortest length toward t and, for each
    other path of length L, an arm of length (L - shortest) / 2 toward a
    branch vertex; leaf bags hold the return paths of length
    (L + shortest) / 2 from t to those branch vertices.  Returns the graph
    and the validated decomposition.
    """
    lens = sorted((int(x) for x in lengths), reverse=True)
    if len(lens) < 2:
        raise ValueError("at least two path lengths required")
    if any(x % 2 == 0 for x in lens):
        raise ValueError("all path lengths must be odd")
    if any(x < 1 for x in lens):
        raise ValueError("path lengths must be at least 1")
    if sum(1 for x in lens if x == 1) > 1:
        raise ValueError("duplicate length-1 path would create a multi-edge")

    shortest = lens[-1]
    edges = []
    nxt = 1

    def grow_path(start, length):
        nonlocal nxt
        if length == 0:
            return start, []
        prev, fresh = start, []
        for _ in range(length - 1):
            edges.append((prev, nxt))
            fresh.append(nxt)
            prev = nxt
            nxt += 1
        edges.append((prev, nxt))
        fresh.append(nxt)
        nxt += 1
        return fresh[-1], fresh

    t, t_arm = grow_path(0, shortest)
    center_bag = {0, t} | set(t_arm)
    branch = []
    for length in lens[:-1]:
        x, arm = grow_path(0, (length - shortest) // 2)
        branch.append(x)
        center_bag |= {x} | set(arm)
    bags = [center_bag]
    tree_edges = []
    for i, length in enumerate(lens[:-1]):
        x = branch[i]
        prev, leaf_bag = t, {t, x}
        for _ in range((length + shortest) // 2 - 1):
            edges.append((prev, nxt))
            leaf_bag.add(nxt)
            prev = nxt
            nxt += 1
        edges.append((prev, x))
        bags.append(leaf_bag)
        tree_edges.append((0, i + 1))

    graph = Graph(nxt, tuple(edges))
    decomposition = TreeDecomposition(tuple(bags), tuple(tree_edges))
    decomposition.validate(graph)
    return graph, decomposition
