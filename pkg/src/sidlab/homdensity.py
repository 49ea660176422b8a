"""Homomorphism densities of graphs in step graphons.

Densities are normalized sums of edge-weight products over all vertex-to-step
assignments, evaluated either by variable elimination (greedy min-fill) or by
brute-force enumeration, in exact rational or float arithmetic.  Pinned
variants fix chosen vertices to steps and normalize over the free vertices
only, which is exactly the counting-kernel convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import contraction
from .contraction import EliminationOrder, elimination_order  # re-export
from .graphs import Graph, ReplacementSpec, complete_graph
from .stepgraphon import StepGraphon, edge_density, kernel_power

__all__ = [
    "DensityValue",
    "EliminationOrder",
    "elimination_order",
    "hom_density",
    "density_gradient",
    "deficit",
    "holder_lower_bound",
]


@dataclass(frozen=True)
class DensityValue:
    """A homomorphism density with its arithmetic mode.

    ``scale_exponent`` is the number of normalized (non-pinned) vertices, so
    an exact value has denominator dividing n^scale_exponent times the product
    of the input denominators over the edges.
    """

    value: object
    mode: str
    scale_exponent: int

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 <= self.value <= 1:
            raise ValueError(f"density {self.value} outside [0, 1]")

    def __float__(self) -> float:
        return float(self.value)

    def to_json_dict(self) -> dict:
        if self.mode == "exact":
            v = f"{self.value.numerator}/{self.value.denominator}"
        else:
            v = float(self.value)
        return {"mode": self.mode, "value": v, "vH": self.scale_exponent}

    @classmethod
    def from_json_dict(cls, data: dict) -> "DensityValue":
        mode = data["mode"]
        value = Fraction(data["value"]) if mode == "exact" else float(data["value"])
        return cls(value, mode, int(data["vH"]))


def _normalize_pins(pins) -> dict:
    if pins is None:
        return {}
    if isinstance(pins, dict):
        return dict(pins)
    out = {}
    for v, s in pins:
        if v in out:
            raise ValueError(f"pin collision at vertex {v}")
        out[v] = s
    return out


def hom_density(graph: Graph, w: StepGraphon, mode: str = "exact",
                strategy: str = "eliminate", pins=None,
                width_cap: int = 8) -> DensityValue:
    """Homomorphism density of ``graph`` in ``w``.

    With pins, the sum runs over assignments extending the pin map and is
    normalized by n to the number of free vertices.  ``eliminate`` and
    ``bruteforce`` agree exactly; brute force enumerates at most 10^7
    assignments, elimination caps the intermediate factor width in exact
    mode (``width_cap``, None to disable).
    """
    pins = _normalize_pins(pins)
    n = w.n_steps
    free = graph.n - len(pins)
    if mode == "exact":
        if strategy == "eliminate":
            value = contraction.contract_exact(
                graph.n, graph.edges, w.values, n, pins=pins,
                width_cap=width_cap,
            )
        elif strategy == "bruteforce":
            value = contraction.bruteforce_exact(
                graph.n, graph.edges, w.values, n, pins=pins,
            )
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        return DensityValue(value, "exact", free)
    if mode == "float":
        if strategy == "eliminate":
            value = contraction.contract_float(
                graph.n, graph.edges, w.float_matrix, n, pins=pins,
            )
        elif strategy == "bruteforce":
            value = contraction.bruteforce_float(
                graph.n, graph.edges, w.float_matrix, n, pins=pins,
            )
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        # Float roundoff may poke a hair outside [0, 1].
        value = min(max(value, 0.0), 1.0)
        return DensityValue(value, "float", free)
    raise ValueError(f"unknown mode {mode!r}")


def _gradient_exact(graph: Graph, w: StepGraphon):
    n = w.n_steps
    grid = [[Fraction(0)] * n for _ in range(n)]
    inv = Fraction(1, n ** 2)
    for u, v in graph.edges:
        rest = graph.without_edge(u, v)
        kernel = contraction.contract_exact(
            rest.n, rest.edges, w.values, n, keep=(u, v), width_cap=None,
        )
        for x in range(n):
            for y in range(n):
                if x == y:
                    grid[x][x] += inv * kernel[x][x]
                else:
                    grid[x][y] += inv * kernel[x][y]
                    grid[y][x] += inv * kernel[x][y]
    return tuple(tuple(row) for row in grid)


def _gradient_float(graph: Graph, a: np.ndarray):
    n = a.shape[0]
    grid = np.zeros((n, n))
    for u, v in graph.edges:
        rest = graph.without_edge(u, v)
        kernel = contraction.contract_float(
            rest.n, rest.edges, a, n, keep=(u, v),
        )
        grid += kernel + kernel.T
    grid /= n ** 2
    # The two orientations double off-diagonal entries but must not double
    # the diagonal, where both orientations are the same assignment.
    np.fill_diagonal(grid, np.diag(grid) / 2.0)
    return grid


def density_gradient(graph: Graph, w: StepGraphon, mode: str = "exact"):
    """Partial derivatives of the density with respect to each grid entry.

    A symmetric pair (u, v) with u != v is treated as a single variable, so
    its partial collects both edge orientations; diagonal entries collect
    one.  Matches central finite differences of ``hom_density``.
    """
    if mode == "exact":
        return _gradient_exact(graph, w)
    if mode == "float":
        return _gradient_float(graph, w.float_matrix)
    raise ValueError(f"unknown mode {mode!r}")


def deficit(graph: Graph, w: StepGraphon, baseline: str = "sidorenko",
            d=None, mode: str = "float"):
    """Signed slack of a density lower bound; negative means violation.

    ``sidorenko``: t_H(W) - t_K2(W)^e(H).  ``knrs``: t_H(W) - d^e(H) with the
    caller-supplied target density d.
    """
    t = hom_density(graph, w, mode=mode).value
    e = graph.num_edges
    if baseline == "sidorenko":
        base = edge_density(w) ** e
    elif baseline == "knrs":
        if d is None:
            raise ValueError("knrs baseline needs a target density d")
        base = Fraction(d) ** e
    else:
        raise ValueError(f"unknown baseline {baseline!r}")
    if mode == "exact":
        return t - base
    return float(t) - float(base)


def holder_lower_bound(graph: Graph, spec: ReplacementSpec, w: StepGraphon,
                       mode: str | None = None) -> DensityValue:
    """Uniformized lower bound for the density of a path-replaced graph.

    Builds the combined pair weight  E[i][j] = prod_k (W^k)[i][j]^alpha_k
    with alpha_k the per-length path totals over C(h, 2), then contracts the
    complete graph on the h host vertices against E.  Integral exponents are
    evaluated exactly; fractional exponents force float mode (0^0 = 1).
    """
    if not spec.matches(graph):
        raise ValueError("replacement spec does not match the host graph")
    alphas = spec.alphas()
    integral = all(a.denominator == 1 for a in alphas.values())
    if mode is None:
        mode = "exact" if integral else "float"
    if mode == "exact" and not integral:
        raise ValueError("fractional exponents require float mode")
    h = graph.n
    n = w.n_steps
    powers = {k: kernel_power(w, k) for k in alphas}
    if mode == "exact":
        grid = [[Fraction(1)] * n for _ in range(n)]
        for k, a in alphas.items():
            pk = powers[k].values
            for i in range(n):
                for j in range(n):
                    grid[i][j] *= pk[i][j] ** int(a)
        combined = StepGraphon(grid)
        value = contraction.contract_exact(
            h, complete_graph(h).edges, combined.values, n, width_cap=None,
        )
        return DensityValue(value, "exact", h)
    mat = np.ones((n, n))
    for k, a in alphas.items():
        base = powers[k].float_matrix
        with np.errstate(invalid="ignore"):
            p = np.power(base, float(a))
        p[np.isnan(p)] = 1.0  # 0^0 convention
        mat *= p
    value = contraction.contract_float(h, complete_graph(h).edges, mat, n)
    return DensityValue(min(max(value, 0.0), 1.0), "float", h)
