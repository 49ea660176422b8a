"""Step graphons with uniform step measure and their kernel algebra.

A step graphon is a symmetric n x n grid of edge weights in [0, 1], each
step carrying measure 1/n.  Exact rationals are the source of truth; the
float view feeds descent-based search only.  Kernel powers are scaled matrix
powers, counting kernels contract a rooted gadget with its roots kept free,
and local denseness reduces to box-constrained quadratic minimization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .contraction import contract_exact
from .graphs import Graph, RootedGraph

__all__ = [
    "StepGraphon",
    "LocalDensityReport",
    "SearchBudget",
    "edge_density",
    "regularity",
    "kernel_power",
    "kernel_compose",
    "counting_kernel",
    "hadamard",
    "permute_steps",
    "local_density_deficit",
    "weighted_reiher_check",
    "generate",
    "constant_graphon",
    "circulant_graphon",
    "regular_graph_graphon",
    "mixture_graphon",
    "pointwise_dense_graphon",
    "graphon_from_graph",
]


class StepGraphon:
    """Symmetric grid of rational edge weights in [0, 1] on equal steps."""

    __slots__ = ("n_steps", "values", "_float")

    def __init__(self, values):
        rows = tuple(tuple(Fraction(x) for x in row) for row in values)
        n = len(rows)
        if n == 0:
            raise ValueError("a step graphon needs at least one step")
        if any(len(row) != n for row in rows):
            raise ValueError("value grid must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"values not symmetric at ({i}, {j})")
                if not 0 <= rows[i][j] <= 1:
                    raise ValueError(f"value at ({i}, {j}) outside [0, 1]")
        self.n_steps = n
        self.values = rows
        self._float = None

    @property
    def float_matrix(self) -> np.ndarray:
        if self._float is None:
            self._float = np.array(
                [[float(x) for x in row] for row in self.values]
            )
        return self._float.copy()

    def __eq__(self, other):
        return (
            isinstance(other, StepGraphon)
            and self.n_steps == other.n_steps
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"StepGraphon(n_steps={self.n_steps})"

    def to_json_dict(self, mode: str = "exact") -> dict:
        if mode == "exact":
            vals = [[f"{x.numerator}/{x.denominator}" for x in row]
                    for row in self.values]
        elif mode == "float":
            vals = [[float(x) for x in row] for row in self.values]
        else:
            raise ValueError(f"unknown mode {mode!r}")
        return {"n": self.n_steps, "values": vals}

    @classmethod
    def from_json_dict(cls, data: dict) -> "StepGraphon":
        n = int(data["n"])
        rows = data["values"]
        if len(rows) != n:
            raise ValueError("graphon value grid does not match declared size")
        return cls([[Fraction(x) for x in row] for row in rows])


def graphon_from_graph(graph: Graph) -> StepGraphon:
    """0/1 step graphon of a graph's adjacency matrix (one step per vertex)."""
    if graph.n == 0:
        raise ValueError("cannot embed the empty graph as a step graphon")
    grid = [[Fraction(0)] * graph.n for _ in range(graph.n)]
    for u, v in graph.edges:
        grid[u][v] = Fraction(1)
        grid[v][u] = Fraction(1)
    return StepGraphon(grid)


def edge_density(w: StepGraphon) -> Fraction:
    n = w.n_steps
    return Fraction(sum(sum(row) for row in w.values), 1) / n ** 2


def regularity(w: StepGraphon, tol: float = 0.0):
    """Row degrees plus the common degree when their spread is within tol.

    Degrees are exact rationals; tol = 0 demands exact equality.  Returns
    ``(degree_or_None, row_degrees)`` where the degree is the exact mean.
    """
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    n = w.n_steps
    degrees = tuple(sum(row) / n for row in w.values)
    spread = max(degrees) - min(degrees)
    if spread == 0 or float(spread) <= tol:
        return sum(degrees) / n, degrees
    return None, degrees


def kernel_power(w: StepGraphon, k: int) -> StepGraphon:
    """Path-counting kernel of length k: the scaled matrix power A^k / n^(k-1)."""
    if k < 1:
        raise ValueError("kernel power needs k >= 1")
    n = w.n_steps
    acc = [list(row) for row in w.values]
    for _ in range(k - 1):
        nxt = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            row = acc[i]
            for j in range(n):
                s = sum(row[t] * w.values[t][j] for t in range(n))
                nxt[i][j] = s / n
        acc = nxt
    return StepGraphon(acc)


def kernel_compose(w1: StepGraphon, w2: StepGraphon) -> StepGraphon:
    """Kernel composition (1/n) * A1 A2; symmetric only for commuting inputs."""
    if w1.n_steps != w2.n_steps:
        raise ValueError("step counts differ")
    n = w1.n_steps
    grid = [
        [sum(w1.values[i][t] * w2.values[t][j] for t in range(n)) / n
         for j in range(n)]
        for i in range(n)
    ]
    return StepGraphon(grid)


def counting_kernel(w: StepGraphon, gadget: RootedGraph) -> StepGraphon:
    """Root-pinned embedding kernel of a rooted gadget.

    Entry (x, y) integrates out all non-root gadget vertices with the roots
    held at steps x and y; the root-swap automorphism guarantees symmetry.
    For a length-k path this coincides with ``kernel_power(w, k)``, and for a
    theta gadget with the entrywise product of its per-path kernels.
    """
    g = gadget.graph
    grid = contract_exact(
        g.n, g.edges, w.values, w.n_steps,
        keep=gadget.roots, width_cap=None,
    )
    return StepGraphon(grid)


def hadamard(w1: StepGraphon, w2: StepGraphon) -> StepGraphon:
    if w1.n_steps != w2.n_steps:
        raise ValueError("step counts differ")
    return StepGraphon([
        [a * b for a, b in zip(r1, r2)]
        for r1, r2 in zip(w1.values, w2.values)
    ])


def permute_steps(w: StepGraphon, perm) -> StepGraphon:
    """Relabel steps by a permutation (old index -> new index)."""
    n = w.n_steps
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of the steps")
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            grid[perm[i]][perm[j]] = w.values[i][j]
    return StepGraphon(grid)


# ---------------------------------------------------------------------------
# Local denseness: minimize q(s) = s^T A s / n^2 - d (sum s / n)^2 over the
# box [0, 1]^n.  A negative minimum certifies a violated subset inequality;
# a nonnegative report is best-effort evidence (the problem is an indefinite
# box QP).  Corners alone are insufficient: fractional minima exist.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchBudget:
    """Search configuration for the local density checker."""

    corner_limit: int = 20
    grid_limit: int = 3
    grid_step: Fraction = Fraction(1, 16)
    starts: int = 1000
    iters: int = 500
    step_size: float = 0.1
    seed: int = 0


@dataclass(frozen=True)
class LocalDensityReport:
    """Minimum of the subset-density quadratic found by the search.

    The deficit is the exact re-evaluation of the quadratic at the witness
    (an occupancy vector in [0, 1]^n), rounded to float; ``deficit_exact``
    keeps the rational value.  Negative deficits are certified violations;
    nonnegative ones are evidence only.
    """

    target_d: Fraction
    deficit: float
    deficit_exact: Fraction
    witness: tuple
    method: str

    def to_json_dict(self) -> dict:
        return {
            "target_d": f"{self.target_d.numerator}/{self.target_d.denominator}",
            "deficit": self.deficit,
            "deficit_exact": (
                f"{self.deficit_exact.numerator}/{self.deficit_exact.denominator}"
            ),
            "witness": [float(x) for x in self.witness],
            "method": self.method,
        }


def _quadratic_exact(w: StepGraphon, d: Fraction, s) -> Fraction:
    n = w.n_steps
    sf = [Fraction(x) for x in s]
    quad = sum(
        sf[i] * sf[j] * w.values[i][j] for i in range(n) for j in range(n)
    )
    total = sum(sf)
    return quad / n ** 2 - d * (total / n) ** 2


def _descent_starts(n, budget):
    children = np.random.SeedSequence(budget.seed).spawn(budget.starts)
    return np.vstack([
        np.random.default_rng(c).random(n) for c in children
    ])


def local_density_deficit(w: StepGraphon, d, budget: SearchBudget | None = None
                          ) -> LocalDensityReport:
    """Search the box for the worst subset-density deficit against target d.

    Runs exhaustive corner enumeration (small n), a coarse uniform grid
    (n <= grid_limit), and multi-start projected gradient descent, then
    re-evaluates the best witness in exact arithmetic.
    """
    d = Fraction(d)
    if not 0 <= d <= 1:
        raise ValueError("target density must lie in [0, 1]")
    budget = budget or SearchBudget()
    n = w.n_steps
    a = w.float_matrix
    df = float(d)
    # the zero occupancy (empty subset) is always a candidate: both sides
    # of the subset inequality vanish there, so the minimum is never > 0
    best_val, best_s, best_method = 0.0, np.zeros(n), "corners"

    if n <= budget.corner_limit:
        chunk = 1 << 16
        total = 1 << n
        for lo in range(0, total, chunk):
            idx = np.arange(lo, min(lo + chunk, total))
            corners = ((idx[:, None] >> np.arange(n)) & 1).astype(float)
            quad = np.einsum("bi,ij,bj->b", corners, a, corners) / n ** 2
            vals = quad - df * (corners.sum(axis=1) / n) ** 2
            i = int(np.argmin(vals))
            if vals[i] < best_val:
                best_val, best_s, best_method = vals[i], corners[i], "corners"

    if n <= budget.grid_limit:
        ticks = np.arange(0, 1 + 1e-12, float(budget.grid_step))
        mesh = np.stack(np.meshgrid(*([ticks] * n), indexing="ij"), axis=-1)
        pts = mesh.reshape(-1, n)
        quad = np.einsum("bi,ij,bj->b", pts, a, pts) / n ** 2
        vals = quad - df * (pts.sum(axis=1) / n) ** 2
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val, best_s, best_method = vals[i], pts[i], "grid"

    s_mat = _descent_starts(n, budget)
    scale = 2.0 / n ** 2
    for _ in range(budget.iters):
        grad = scale * (s_mat @ a - df * s_mat.sum(axis=1, keepdims=True))
        s_mat = np.clip(s_mat - budget.step_size * grad, 0.0, 1.0)
    vals = (
        np.einsum("bi,ij,bj->b", s_mat, a, s_mat) / n ** 2
        - df * (s_mat.sum(axis=1) / n) ** 2
    )
    i = int(np.argmin(vals))
    if vals[i] < best_val:
        best_val, best_s, best_method = vals[i], s_mat[i], "descent"

    witness = tuple(float(x) for x in best_s)
    exact = _quadratic_exact(w, d, witness)
    return LocalDensityReport(
        target_d=d,
        deficit=float(exact),
        deficit_exact=exact,
        witness=witness,
        method=best_method,
    )


def weighted_reiher_check(w: StepGraphon, d, f, tol: float = 1e-12):
    """Vertex-weighted subset inequality at weight vector f in [0, 1]^n.

    Returns (lhs, rhs, passed) with lhs the f-weighted pair integral and rhs
    d times the squared mean of f.  Meaningful when the caller knows w to be
    d-locally dense (for example pointwise >= d, or a counting kernel of an
    even theta over a regular graphon).
    """
    d = Fraction(d)
    n = w.n_steps
    fv = [float(x) for x in f]
    if len(fv) != n:
        raise ValueError("weight vector length must match the step count")
    if any(x < 0 or x > 1 for x in fv):
        raise ValueError("weights must lie in [0, 1]")
    a = w.float_matrix
    fa = np.array(fv)
    lhs = float(fa @ a @ fa) / n ** 2
    rhs = float(d) * (fa.sum() / n) ** 2
    return lhs, rhs, lhs >= rhs - tol


# ---------------------------------------------------------------------------
# Generators.
# ---------------------------------------------------------------------------

def constant_graphon(d, n: int) -> StepGraphon:
    d = Fraction(d)
    return StepGraphon([[d] * n for _ in range(n)])


def circulant_graphon(profile) -> StepGraphon:
    """values[i][j] = profile[(i - j) mod n]; regular by construction."""
    prof = [Fraction(x) for x in profile]
    n = len(prof)
    if n == 0:
        raise ValueError("profile must be nonempty")
    for k in range(1, n):
        if prof[k] != prof[n - k]:
            raise ValueError("profile must be symmetric: p[k] == p[n-k]")
    return StepGraphon([[prof[(i - j) % n] for j in range(n)] for i in range(n)])


def _pairing_regular_edges(n: int, deg: int, rng: random.Random):
    """Random simple deg-regular edge set via stub pairing with switch repair."""
    while True:
        stubs = list(range(n)) * deg
        rng.shuffle(stubs)
        pairs = [
            tuple(sorted((stubs[2 * i], stubs[2 * i + 1])))
            for i in range(len(stubs) // 2)
        ]
        repaired = _switch_repair(pairs, rng)
        if repaired is not None:
            return repaired


def _switch_repair(pairs, rng: random.Random, max_attempts=3000):
    pairs = list(pairs)
    for _ in range(max_attempts):
        counts = {}
        for e in pairs:
            counts[e] = counts.get(e, 0) + 1
        bad = [
            i for i, e in enumerate(pairs)
            if e[0] == e[1] or counts[e] > 1
        ]
        if not bad:
            return set(pairs)
        i = bad[0]
        j = rng.randrange(len(pairs))
        if i == j:
            continue
        u, v = pairs[i]
        x, y = pairs[j]
        if rng.random() < 0.5:
            x, y = y, x
        e1, e2 = tuple(sorted((u, x))), tuple(sorted((v, y)))
        if e1[0] == e1[1] or e2[0] == e2[1]:
            continue
        current = set(pairs) - {pairs[i], pairs[j]}
        if e1 in current or e2 in current or e1 == e2:
            continue
        pairs[i], pairs[j] = e1, e2
    return None


def regular_graph_graphon(n: int, deg: int, seed: int) -> StepGraphon:
    """Random simple deg-regular graph as a 0/1 graphon; (deg/n)-regular."""
    if deg < 0 or deg >= n:
        raise ValueError(f"degree {deg} infeasible for {n} vertices")
    if (n * deg) % 2 != 0:
        raise ValueError("n * deg must be even")
    rng = random.Random(seed)
    if deg == 0:
        return constant_graphon(0, n)
    edges = _pairing_regular_edges(n, deg, rng)
    grid = [[Fraction(0)] * n for _ in range(n)]
    for u, v in edges:
        grid[u][v] = Fraction(1)
        grid[v][u] = Fraction(1)
    return StepGraphon(grid)


def mixture_graphon(graphons, weights) -> StepGraphon:
    """Convex combination; mixing equal-degree regular inputs stays regular."""
    ws = [Fraction(x) for x in weights]
    if len(ws) != len(graphons) or not graphons:
        raise ValueError("need one weight per graphon")
    if any(x < 0 for x in ws) or sum(ws) != 1:
        raise ValueError("weights must be nonnegative and sum to 1")
    n = graphons[0].n_steps
    if any(g.n_steps != n for g in graphons):
        raise ValueError("step counts differ")
    grid = [
        [sum(wt * g.values[i][j] for wt, g in zip(ws, graphons))
         for j in range(n)]
        for i in range(n)
    ]
    return StepGraphon(grid)


def pointwise_dense_graphon(n: int, d, noise, seed: int,
                            denominator: int = 64) -> StepGraphon:
    """Entries in [d, 1]: d plus rational noise; d-locally dense pointwise."""
    d = Fraction(d)
    noise = Fraction(noise)
    if not 0 <= d <= 1 or not 0 <= noise <= 1:
        raise ValueError("density and noise must lie in [0, 1]")
    rng = random.Random(seed)
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            u = Fraction(rng.randrange(denominator + 1), denominator)
            val = d + (1 - d) * noise * u
            grid[i][j] = val
            grid[j][i] = val
    return StepGraphon(grid)


def generate(kind: str, seed: int = 0, **params) -> StepGraphon:
    """Dispatch to the named generator; seeded kinds are deterministic."""
    if kind == "constant":
        return constant_graphon(params["d"], int(params["n"]))
    if kind == "circulant":
        return circulant_graphon(params["profile"])
    if kind == "regular_graph":
        return regular_graph_graphon(int(params["n"]), int(params["deg"]), seed)
    if kind == "mixture":
        return mixture_graphon(params["graphons"], params["weights"])
    if kind == "pointwise_dense":
        return pointwise_dense_graphon(
            int(params["n"]), params["d"], params.get("noise", Fraction(1, 2)),
            seed,
        )
    raise ValueError(f"unknown generator kind {kind!r}")
