"""Numerical search for density-inequality violations over regular graphons.

The feasible set is the intersection of an affine slice (symmetric grids
with all row sums equal to n*d) and the box [0, 1]^(n x n).  Projection onto
the intersection uses Dykstra's alternating scheme; the objective is the
signed slack of the density lower bound, minimized by projected gradient
descent with Armijo backtracking.  A candidate violation is only ever
announced after the float witness is rationalized and the inequality
re-checked in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import contraction
from .graphs import Graph
from .homdensity import _gradient_float
from .stepgraphon import StepGraphon, edge_density

__all__ = [
    "ProjectionError",
    "SearchResult",
    "project_regular",
    "search_counterexample",
    "certify_violation",
]


class ProjectionError(RuntimeError):
    """Alternating projection failed to reach the residual target."""

    def __init__(self, residual: float):
        super().__init__(f"projection did not converge; residual {residual:.3e}")
        self.residual = residual


def _affine_project(m: np.ndarray, row_target: float) -> np.ndarray:
    """Frobenius projection onto symmetric grids with constant row sums."""
    n = m.shape[0]
    r = row_target - m.sum(axis=1)
    sigma = r.sum() / (2 * n)
    mu = (r - sigma) / n
    # form the rank-two bump first: mu_i + mu_j is commutative, so adding it
    # as one term keeps the result bit-for-bit symmetric
    return m + (mu[:, None] + mu[None, :])


def _project_regular_array(m: np.ndarray, d: float, tol: float = 1e-10,
                           max_iter: int = 5000) -> np.ndarray:
    n = m.shape[0]
    target = n * d
    x = (m + m.T) / 2.0
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    for _ in range(max_iter):
        y = _affine_project(x + p, target)
        p = x + p - y
        x_new = np.clip(y + q, 0.0, 1.0)
        q = y + q - x_new
        x = x_new
        residual = float(np.max(np.abs(x.sum(axis=1) - target)))
        if residual <= tol:
            return x
    raise ProjectionError(residual)


def project_regular(grid, d, tol: float = 1e-10,
                    max_iter: int = 5000) -> StepGraphon:
    """Nearest d-regular step graphon in Frobenius distance (to residual tol).

    Accepts a StepGraphon, nested values, or an ndarray.  Raises
    ProjectionError with the final residual if the iteration cap is hit.
    """
    d = Fraction(d)
    if not 0 <= d <= 1:
        raise ValueError("degree must lie in [0, 1]")
    if isinstance(grid, StepGraphon):
        m = grid.float_matrix
    else:
        m = np.array(grid, dtype=float)
    x = _project_regular_array(m, float(d), tol=tol, max_iter=max_iter)
    return StepGraphon(x)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one multi-start descent run.

    ``best_deficit`` is the recomputed slack at ``best_w``; ``trace`` lists
    the accepted-step objective values of the winning start (non-increasing).
    ``certificate`` is None unless an exact-arithmetic recheck confirmed a
    violation at a rationalized witness.
    """

    best_w: StepGraphon
    best_deficit: float
    trace: tuple
    starts: int
    seed: int
    certificate: dict | None = None

    @property
    def certified_violation(self) -> bool:
        return self.certificate is not None

    def to_json_dict(self) -> dict:
        return {
            "best_deficit": self.best_deficit,
            "graphon": self.best_w.to_json_dict(mode="float"),
            "trace": list(self.trace),
            "starts": self.starts,
            "seed": self.seed,
            "certificate": self.certificate,
        }

    def trace_csv(self) -> str:
        lines = ["iteration,deficit"]
        lines += [f"{i},{v!r}" for i, v in enumerate(self.trace)]
        return "\n".join(lines) + "\n"


def _sidorenko_slack(graph: Graph, a: np.ndarray, n: int) -> float:
    t = contraction.contract_float(graph.n, graph.edges, a, n)
    return t - float(a.sum() / n ** 2) ** graph.num_edges


def _slack_gradient(graph: Graph, a: np.ndarray, n: int) -> np.ndarray:
    g = _gradient_float(graph, a)
    dens = float(a.sum() / n ** 2)
    e = graph.num_edges
    base = np.full((n, n), 2.0 / n ** 2)
    np.fill_diagonal(base, 1.0 / n ** 2)
    return g - e * dens ** (e - 1) * base


def search_counterexample(graph: Graph, n: int, d, starts: int = 32,
                          iters: int = 500, seed: int = 0,
                          step: float = 0.05, armijo: float = 0.5
                          ) -> SearchResult:
    """Minimize the density slack of a bipartite graph over d-regular graphons.

    Projected gradient descent with backtracking line search (sufficient
    decrease 1e-4, shrink factor ``armijo``).  Deterministic for a fixed
    seed; starts are merged by minimum final slack with ties broken by start
    index.  A certificate is attached only when the exact recheck at a
    rationalized witness confirms a strict violation.
    """
    if not graph.is_bipartite():
        raise ValueError("search targets bipartite graphs only")
    if n < 1 or starts < 1 or iters < 1:
        raise ValueError("parameters must be positive")
    d = Fraction(d)
    if not 0 <= d <= 1:
        raise ValueError("degree must lie in [0, 1]")
    df = float(d)

    children = np.random.SeedSequence(seed).spawn(starts)
    best = None
    for index, child in enumerate(children):
        rng = np.random.default_rng(child)
        raw = rng.random((n, n))
        x = _project_regular_array((raw + raw.T) / 2.0, df)
        val = _sidorenko_slack(graph, x, n)
        trace = [val]
        for _ in range(iters):
            grad = _slack_gradient(graph, x, n)
            if float(np.max(np.abs(grad))) < 1e-14:
                break
            eta = step
            accepted = False
            while eta > 1e-12:
                cand = _project_regular_array(x - eta * grad, df)
                cand_val = _sidorenko_slack(graph, cand, n)
                decrease = float(np.sum(grad * (cand - x)))
                if cand_val <= val + 1e-4 * decrease:
                    x, val = cand, cand_val
                    trace.append(val)
                    accepted = True
                    break
                eta *= armijo
            if not accepted:
                break
        if best is None or val < best[0]:
            best = (val, index, x, tuple(trace))

    _, _, x, trace = best
    w = StepGraphon(x)
    recomputed = float(
        contraction.contract_float(graph.n, graph.edges, w.float_matrix, n)
        - float(edge_density(w)) ** graph.num_edges
    )
    certificate = None
    if recomputed < -1e-8:
        certificate = certify_violation(graph, x, d)
    return SearchResult(
        best_w=w,
        best_deficit=recomputed,
        trace=trace,
        starts=starts,
        seed=seed,
        certificate=certificate,
    )


def certify_violation(graph: Graph, matrix, d=None,
                      max_denominator: int = 10 ** 6) -> dict | None:
    """Exact-arithmetic recheck of a float witness.

    Rationalizes every entry by continued fractions, re-projects the affine
    row-sum constraint exactly when a degree is given, clamps to [0, 1], and
    recomputes both sides of the density inequality over the rationals.
    Returns a JSON-able certificate when the violation survives, else None.
    """
    m = np.asarray(matrix, dtype=float)
    n = m.shape[0]
    vals = [
        [Fraction(m[i, j]).limit_denominator(max_denominator) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(i + 1, n):
            avg = (vals[i][j] + vals[j][i]) / 2
            vals[i][j] = avg
            vals[j][i] = avg
    if d is not None:
        target = Fraction(d) * n
        r = [target - sum(row) for row in vals]
        sigma = sum(r) / (2 * n)
        mu = [(ri - sigma) / n for ri in r]
        vals = [
            [vals[i][j] + mu[i] + mu[j] for j in range(n)]
            for i in range(n)
        ]
    vals = [[min(max(x, Fraction(0)), Fraction(1)) for x in row] for row in vals]
    w = StepGraphon(vals)
    lhs = contraction.contract_exact(
        graph.n, graph.edges, w.values, n, width_cap=None,
    )
    rhs = edge_density(w) ** graph.num_edges
    if lhs >= rhs:
        return None
    return {
        "witness": w.to_json_dict(mode="exact"),
        "t_H": f"{lhs.numerator}/{lhs.denominator}",
        "baseline": f"{rhs.numerator}/{rhs.denominator}",
        "gap": float(lhs - rhs),
    }
