"""Variable-elimination contraction of pairwise step-weight products.

Evaluates sums of the form

    (1/n)^{#eliminated} * sum over assignments phi of free vertices of
        prod over edges (u, v) of  A[phi(u)][phi(v)]

where pinned vertices are fixed to given steps and kept vertices survive as
output axes.  The exact backend works over a common-denominator integer
scaling of the rational weight grid; the float backend contracts numpy
arrays via einsum and folds one 1/n into each elimination step, which keeps
every intermediate value inside [0, 1].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

__all__ = [
    "EliminationOrder",
    "elimination_order",
    "contract_exact",
    "contract_float",
    "bruteforce_exact",
    "bruteforce_float",
    "WidthCapExceeded",
    "BRUTEFORCE_STATE_LIMIT",
]

BRUTEFORCE_STATE_LIMIT = 10 ** 7


class WidthCapExceeded(ValueError):
    """Exact contraction refused: intermediate factor arity above the cap."""


@dataclass(frozen=True)
class EliminationOrder:
    """Vertices in elimination sequence with per-step intermediate arities.

    ``arities[i]`` counts the variables of the combined factor built when
    ``vertices[i]`` is summed out (the eliminated variable plus its current
    neighbors), so ``max_arity == width + 1``.
    """

    vertices: tuple
    arities: tuple

    @property
    def width(self) -> int:
        return max(self.arities, default=1) - 1

    @property
    def max_arity(self) -> int:
        return max(self.arities, default=1)


@lru_cache(maxsize=4096)
def _elimination_order_cached(n_vertices, edges, pins, keep):
    pinset, keepset = set(pins), set(keep)
    present = [v for v in range(n_vertices) if v not in pinset]
    adj = {v: set() for v in present}
    for u, v in edges:
        if u in pinset or v in pinset:
            continue
        adj[u].add(v)
        adj[v].add(u)
    eliminable = set(present) - keepset

    def fill(v):
        nbrs = list(adj[v])
        return sum(
            1
            for i in range(len(nbrs))
            for j in range(i + 1, len(nbrs))
            if nbrs[j] not in adj[nbrs[i]]
        )

    order, arities = [], []
    while eliminable:
        v = min(eliminable, key=lambda w: (fill(w), len(adj[w]), w))
        order.append(v)
        arities.append(len(adj[v]) + 1)
        nbrs = set(adj[v])
        for a in nbrs:
            adj[a] |= nbrs - {a}
            adj[a].discard(v)
        del adj[v]
        eliminable.remove(v)
    return EliminationOrder(tuple(order), tuple(arities))


def elimination_order(n_vertices, edges, pins=(), keep=()) -> EliminationOrder:
    """Greedy min-fill order, min-degree then min-index tie-break.

    Pinned vertices are dropped up front (their edges become unary lookups);
    kept vertices participate in the interaction graph but are never
    eliminated.
    """
    return _elimination_order_cached(
        n_vertices, tuple(edges), tuple(sorted(pins)), tuple(keep)
    )


def _check_pins(n_vertices, n_steps, pins, keep):
    pins = dict(pins or {})
    for v, s in pins.items():
        if not (0 <= v < n_vertices):
            raise ValueError(f"pinned vertex {v} out of range")
        if not (0 <= s < n_steps):
            raise ValueError(f"pin target step {s} out of range")
    if set(pins) & set(keep):
        raise ValueError("a vertex cannot be both pinned and kept")
    return pins


# ---------------------------------------------------------------------------
# Exact backend.
# ---------------------------------------------------------------------------

def _scaled_integer_grid(values):
    denoms = [x.denominator for row in values for x in row]
    q = lcm(*denoms) if denoms else 1
    grid = [[int(x * q) for x in row] for row in values]
    return grid, q


def contract_exact(n_vertices, edges, values, n_steps, pins=None, keep=(),
                   width_cap=8):
    """Exact contraction over Fractions.

    Returns a Fraction when ``keep`` is empty, a tuple (vector) for one kept
    vertex, or a tuple of tuples (grid) for two.  Raises WidthCapExceeded when
    greedy min-fill needs an intermediate factor wider than ``width_cap + 1``.
    """
    keep = tuple(keep)
    if len(keep) > 2:
        raise ValueError("at most two kept vertices supported")
    pins = _check_pins(n_vertices, n_steps, pins, keep)
    order = elimination_order(n_vertices, edges, pins, keep)
    if width_cap is not None and order.width > width_cap:
        raise WidthCapExceeded(
            f"induced width {order.width} exceeds cap {width_cap}"
        )
    grid, q = _scaled_integer_grid(values)

    const = 1
    factors = []
    for u, v in edges:
        pu, pv = pins.get(u), pins.get(v)
        if pu is not None and pv is not None:
            const *= grid[pu][pv]
        elif pu is not None:
            factors.append(((v,), {(x,): grid[pu][x] for x in range(n_steps)}))
        elif pv is not None:
            factors.append(((u,), {(x,): grid[pv][x] for x in range(n_steps)}))
        else:
            factors.append((
                (u, v),
                {(x, y): grid[x][y]
                 for x in range(n_steps) for y in range(n_steps)},
            ))

    for v in order.vertices:
        group = [f for f in factors if v in f[0]]
        if not group:
            const *= n_steps  # isolated variable: plain sum of ones
            continue
        factors = [f for f in factors if v not in f[0]]
        out_vars = sorted(set().union(*(f[0] for f in group)) - {v})
        positions = [
            tuple(out_vars.index(w) if w != v else -1 for w in fvars)
            for fvars, _ in group
        ]
        table = {}
        for assign in itertools.product(range(n_steps), repeat=len(out_vars)):
            total = 0
            for x in range(n_steps):
                prod = 1
                for (fvars, ftab), pos in zip(group, positions):
                    prod *= ftab[tuple(assign[p] if p >= 0 else x for p in pos)]
                    if prod == 0:
                        break
                total += prod
            table[assign] = total
        if out_vars:
            factors.append((tuple(out_vars), table))
        else:
            const *= table[()]

    denominator = q ** len(edges) * n_steps ** len(order.vertices)

    def entry(assign_map):
        prod = const
        for fvars, ftab in factors:
            prod *= ftab[tuple(assign_map[w] for w in fvars)]
        return Fraction(prod, denominator)

    if not keep:
        assert not factors
        return Fraction(const, denominator)
    if len(keep) == 1:
        return tuple(entry({keep[0]: x}) for x in range(n_steps))
    return tuple(
        tuple(entry({keep[0]: x, keep[1]: y}) for y in range(n_steps))
        for x in range(n_steps)
    )


# ---------------------------------------------------------------------------
# Float backend.
# ---------------------------------------------------------------------------

def _einsum_group(group, out_vars):
    """Contract the factors in ``group`` down to the axes in ``out_vars``."""
    labels = {}
    operands = []
    for fvars, arr in group:
        for w in fvars:
            labels.setdefault(w, len(labels))
        operands.extend([arr, [labels[w] for w in fvars]])
    return np.einsum(*operands, [labels[w] for w in out_vars])


def contract_float(n_vertices, edges, matrix, n_steps, pins=None, keep=()):
    """Float contraction via einsum; same semantics as contract_exact."""
    keep = tuple(keep)
    if len(keep) > 2:
        raise ValueError("at most two kept vertices supported")
    pins = _check_pins(n_vertices, n_steps, pins, keep)
    a = np.asarray(matrix, dtype=float)
    order = elimination_order(n_vertices, edges, pins, keep)

    const = 1.0
    factors = []
    for u, v in edges:
        pu, pv = pins.get(u), pins.get(v)
        if pu is not None and pv is not None:
            const *= a[pu, pv]
        elif pu is not None:
            factors.append(((v,), a[pu, :]))
        elif pv is not None:
            factors.append(((u,), a[pv, :]))
        else:
            factors.append(((u, v), a))

    for v in order.vertices:
        group = [f for f in factors if v in f[0]]
        if not group:
            continue  # isolated variable: sum/n == 1
        factors = [f for f in factors if v not in f[0]]
        out_vars = sorted(set().union(*(f[0] for f in group)) - {v})
        result = _einsum_group(group, out_vars) / n_steps
        if out_vars:
            factors.append((tuple(out_vars), result))
        else:
            const *= float(result)

    if not keep:
        assert not factors
        return float(const)

    covered = sorted(set().union(*(f[0] for f in factors))) if factors else []
    partial = _einsum_group(factors, covered) if factors else np.float64(1.0)
    partial = np.asarray(partial, dtype=float) * const
    if covered:
        kept_covered = [k for k in keep if k in covered]
        partial = np.transpose(
            partial, [covered.index(k) for k in kept_covered]
        )
    shape = tuple(n_steps if k in covered else 1 for k in keep)
    return np.ones((n_steps,) * len(keep)) * partial.reshape(shape)


# ---------------------------------------------------------------------------
# Brute-force backends (the independent oracle for the elimination engine).
# ---------------------------------------------------------------------------

def _bruteforce_guard(n_vertices, n_steps):
    if n_steps ** n_vertices > BRUTEFORCE_STATE_LIMIT:
        raise ValueError(
            f"brute force refused: {n_steps}^{n_vertices} assignments exceed "
            f"{BRUTEFORCE_STATE_LIMIT}"
        )


def bruteforce_exact(n_vertices, edges, values, n_steps, pins=None, keep=()):
    keep = tuple(keep)
    pins = _check_pins(n_vertices, n_steps, pins, keep)
    _bruteforce_guard(n_vertices, n_steps)
    grid, q = _scaled_integer_grid(values)
    free = [v for v in range(n_vertices) if v not in pins and v not in keep]
    denominator = q ** len(edges) * n_steps ** len(free)

    def total(fixed):
        acc = 0
        for assign in itertools.product(range(n_steps), repeat=len(free)):
            phi = dict(fixed)
            phi.update(zip(free, assign))
            prod = 1
            for u, v in edges:
                prod *= grid[phi[u]][phi[v]]
                if prod == 0:
                    break
            acc += prod
        return Fraction(acc, denominator)

    base = dict(pins)
    if not keep:
        return total(base)
    if len(keep) == 1:
        return tuple(total({**base, keep[0]: x}) for x in range(n_steps))
    if len(keep) == 2:
        return tuple(
            tuple(total({**base, keep[0]: x, keep[1]: y})
                  for y in range(n_steps))
            for x in range(n_steps)
        )
    raise ValueError("at most two kept vertices supported")


def bruteforce_float(n_vertices, edges, matrix, n_steps, pins=None, keep=()):
    keep = tuple(keep)
    pins = _check_pins(n_vertices, n_steps, pins, keep)
    _bruteforce_guard(n_vertices, n_steps)
    a = np.asarray(matrix, dtype=float)
    free = [v for v in range(n_vertices) if v not in pins and v not in keep]
    scale = float(n_steps) ** len(free)

    def total(fixed):
        acc = 0.0
        for assign in itertools.product(range(n_steps), repeat=len(free)):
            phi = dict(fixed)
            phi.update(zip(free, assign))
            prod = 1.0
            for u, v in edges:
                prod *= a[phi[u], phi[v]]
            acc += prod
        return acc / scale

    base = dict(pins)
    if not keep:
        return total(base)
    if len(keep) == 1:
        return np.array([total({**base, keep[0]: x}) for x in range(n_steps)])
    if len(keep) == 2:
        return np.array([
            [total({**base, keep[0]: x, keep[1]: y}) for y in range(n_steps)]
            for x in range(n_steps)
        ])
    raise ValueError("at most two kept vertices supported")
