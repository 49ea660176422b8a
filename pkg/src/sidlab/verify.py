"""Randomized verification suites, one per proved inequality or identity.

Each suite draws deterministic instances from its seed, checks the claimed
relation at the stated tolerance, and reports failures with reproducible
per-trial seeds.  Failing instances are re-tested downward (smaller step
count first, then smaller graphs) so reported witnesses are minimal for the
trial's recipe.  Exact identities are checked with rational arithmetic and
zero tolerance; searched local-density claims get a looser floor because the
box search is best-effort.
"""

from __future__ import annotations

import heapq
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .graphs import (
    Graph,
    ReplacementSpec,
    Theorem12Case,
    classify_theorem12,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_union,
    generalized_theta,
    path_graph,
    replace_edges,
    replace_edges_nonuniform,
    semidirect_product,
    subdivide,
)
from .homdensity import deficit, hom_density, holder_lower_bound
from .stepgraphon import (
    SearchBudget,
    StepGraphon,
    circulant_graphon,
    counting_kernel,
    hadamard,
    kernel_power,
    local_density_deficit,
    mixture_graphon,
    permute_steps,
    pointwise_dense_graphon,
    regular_graph_graphon,
    regularity,
)

__all__ = [
    "SuiteReport",
    "verify_counting_identity",
    "verify_local_density",
    "verify_sidorenko_families",
    "verify_flower_knrs",
    "verify_holder",
    "SUITES",
]

FLOAT_TOL = 1e-12
SEARCH_TOL = 1e-9


@dataclass
class SuiteReport:
    """Aggregate outcome of one suite run.

    Failure records carry ``gap = lhs - rhs`` (negative means violation)
    along with the trial seed that reproduces them.  ``max_gap`` tracks the
    largest observed shortfall ``rhs - lhs`` across all checks, so creeping
    tolerance regressions stay visible even while the suite passes.
    """

    suite: str
    trials: int
    failures: list
    seed: int
    max_gap: float
    runtime_ms: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self, include_runtime: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "trials": self.trials,
            "failures": self.failures,
            "seed": self.seed,
            "max_gap": self.max_gap,
        }
        if include_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "SuiteReport":
        return cls(
            suite=data["suite"],
            trials=int(data["trials"]),
            failures=list(data["failures"]),
            seed=int(data["seed"]),
            max_gap=float(data["max_gap"]),
            runtime_ms=float(data.get("runtime_ms", 0.0)),
        )


def _rel_ok(lhs: float, rhs: float, tol: float) -> bool:
    return lhs >= rhs - tol * max(1.0, abs(lhs), abs(rhs))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _run_checks(suite_id, seed, checks, jobs=1):
    """Run check callables, collect failures and the worst observed gap.

    Each check returns ``(gap, failure_record_or_None)`` with gap = lhs - rhs.
    Results aggregate in deterministic submission order regardless of the
    executor interleaving.
    """
    t0 = time.perf_counter()
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda c: c(), checks))
    else:
        results = [c() for c in checks]
    failures = [rec for _, rec in results if rec is not None]
    max_gap = max((-gap for gap, _ in results), default=0.0)
    runtime_ms = (time.perf_counter() - t0) * 1000.0
    return SuiteReport(
        suite=suite_id,
        trials=len(results),
        failures=failures,
        seed=seed,
        max_gap=max_gap,
        runtime_ms=runtime_ms,
    )


def _minimize(check_at, sizes):
    """First failing record over downward size candidates (smallest first)."""
    for size in sizes:
        rec = check_at(size)
        if rec is not None:
            rec["minimized"] = True
            return rec
    return None


def _trial_seeds(seed, count):
    master = random.Random(seed)
    return [master.randrange(2 ** 32) for _ in range(count)]


# ---------------------------------------------------------------------------
# Random instance helpers (all driven by a caller-owned random.Random).
# ---------------------------------------------------------------------------

def _random_graph(rng, nv, edge_prob=0.6, min_edges=1) -> Graph:
    for _ in range(64):
        edges = [
            (u, v)
            for u in range(nv)
            for v in range(u + 1, nv)
            if rng.random() < edge_prob
        ]
        if len(edges) >= min_edges:
            return Graph(nv, tuple(edges))
    return complete_graph(nv)


def _random_theta(rng, parity="any"):
    count = rng.randint(1, 3)
    if parity == "even":
        lengths = [2 * rng.randint(1, 2) for _ in range(count)]
    elif parity == "odd":
        lengths = [2 * rng.randint(0, 2) + 1 for _ in range(count)]
        while lengths.count(1) > 1:
            lengths[lengths.index(1)] = 3
    else:
        lengths = [rng.randint(1, 4) for _ in range(count)]
        while lengths.count(1) > 1:
            lengths[lengths.index(1)] = rng.randint(2, 4)
    return generalized_theta(lengths, parity)


def _random_rational_graphon(rng, n, denominator=6) -> StepGraphon:
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = Fraction(rng.randrange(denominator + 1), denominator)
            grid[i][j] = x
            grid[j][i] = x
    return StepGraphon(grid)


def _random_regular_graphon(rng, n, denominator=12) -> StepGraphon:
    """Random regular rational graphon: permuted circulant, sometimes mixed
    with a random regular graph adjacency (mixtures of regulars stay regular)."""
    half = [
        Fraction(rng.randrange(denominator + 1), denominator)
        for _ in range(n // 2 + 1)
    ]
    profile = [half[min(k, n - k)] for k in range(n)]
    w = circulant_graphon(profile)
    if n >= 3 and rng.random() < 0.4:
        deg = rng.randint(1, n - 1)
        if (n * deg) % 2 == 1:
            deg = max(1, deg - 1) if (n * (deg - 1)) % 2 == 0 else deg + 1
        if 0 < deg < n and (n * deg) % 2 == 0:
            g = regular_graph_graphon(n, deg, rng.randrange(2 ** 31))
            lam = Fraction(rng.randint(1, 3), 4)
            w = mixture_graphon([w, g], [lam, 1 - lam])
    perm = list(range(n))
    rng.shuffle(perm)
    return permute_steps(w, perm)


def _random_tree(rng, nv) -> Graph:
    if nv <= 1:
        return Graph(max(nv, 1))
    if nv == 2:
        return Graph(2, ((0, 1),))
    prufer = [rng.randrange(nv) for _ in range(nv - 2)]
    degree = [1] * nv
    for v in prufer:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(nv) if degree[v] == 1)
    heapq.heapify(leaves)
    for v in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(nv, tuple(edges))


# ---------------------------------------------------------------------------
# Suite: exact counting-kernel identity  t_{H'}(W) == t_H(W^F).
# ---------------------------------------------------------------------------

def verify_counting_identity(trials: int = 200, seed: int = 0,
                             jobs: int = 1) -> SuiteReport:
    """Replacing every host edge by a rooted gadget, then evaluating, equals
    evaluating the host against the gadget's counting kernel.  Exact rational
    equality on randomized (H, F, W); any inequality is a hard failure."""

    def run_one(trial_seed, nv=None, n=None):
        rng = random.Random(trial_seed)
        nv_drawn = rng.randint(2, 5)
        gadget = _random_theta(rng)
        n_drawn = rng.randint(2, 4)
        nv_used = nv if nv is not None else nv_drawn
        n_used = n if n is not None else n_drawn
        host = _random_graph(rng, nv_used)
        w = _random_rational_graphon(rng, n_used)
        replaced = replace_edges(host, gadget)
        lhs = hom_density(replaced, w).value
        rhs = hom_density(host, counting_kernel(w, gadget)).value
        gap = -abs(float(lhs - rhs))
        record = None
        if lhs != rhs:
            record = {
                "inputs": {
                    "host": host.to_json_dict(),
                    "gadget": gadget.to_json_dict(),
                    "graphon": w.to_json_dict(),
                },
                "lhs": _frac_str(lhs),
                "rhs": _frac_str(rhs),
                "gap": gap,
                "trial_seed": trial_seed,
            }
        return gap, record, (n_used, nv_used)

    def make_check(trial_seed):
        def check():
            gap, record, (n_used, nv_used) = run_one(trial_seed)
            if record is not None:
                sizes = sorted(
                    (nn, vv)
                    for nn in range(2, n_used + 1)
                    for vv in range(2, nv_used + 1)
                )
                minimized = _minimize(
                    lambda s: run_one(trial_seed, nv=s[1], n=s[0])[1], sizes
                )
                record = minimized or record
            return gap, record
        return check

    checks = [make_check(s) for s in _trial_seeds(seed, trials)]
    return _run_checks("lemma31", seed, checks, jobs)


# ---------------------------------------------------------------------------
# Suite: local denseness of counting kernels and Hadamard attachments.
# ---------------------------------------------------------------------------

def verify_local_density(trials: int = 50, seed: int = 0, jobs: int = 1,
                         budget: SearchBudget | None = None) -> SuiteReport:
    """Counting kernels of even thetas over d-regular graphons must be
    d^e-locally dense, and the entrywise product of a d1-locally-dense grid
    with an even kernel power of a d2-regular graphon must be d1*d2^2k-locally
    dense.  Searched deficits below -1e-9 are failures."""

    def run_one(trial_seed, style, n=None):
        rng = random.Random(trial_seed)
        n_drawn = rng.randint(2, 6)
        n_used = n if n is not None else n_drawn
        b = budget or SearchBudget(seed=rng.randrange(2 ** 31))
        if style == 0:
            w = _random_regular_graphon(rng, n_used)
            theta = _random_theta(rng, parity="even")
            kernel = counting_kernel(w, theta)
            d = regularity(w)[0]
            target = d ** theta.num_edges
            inputs = {
                "style": "even-theta-kernel",
                "graphon": w.to_json_dict(),
                "theta": theta.to_json_dict(),
            }
        else:
            d1 = Fraction(rng.randint(2, 8), 10)
            w1 = pointwise_dense_graphon(
                n_used, d1, Fraction(1, 2), rng.randrange(2 ** 31)
            )
            w2 = _random_regular_graphon(rng, n_used)
            d2 = regularity(w2)[0]
            k = rng.randint(1, 2)
            kernel = hadamard(w1, kernel_power(w2, 2 * k))
            target = d1 * d2 ** (2 * k)
            inputs = {
                "style": "hadamard-attachment",
                "dense_floor": _frac_str(d1),
                "power": 2 * k,
                "w1": w1.to_json_dict(),
                "w2": w2.to_json_dict(),
            }
        report = local_density_deficit(kernel, target, b)
        gap = report.deficit
        record = None
        if gap < -SEARCH_TOL:
            record = {
                "inputs": inputs,
                "lhs": report.deficit,
                "rhs": 0.0,
                "gap": gap,
                "witness": list(report.witness),
                "trial_seed": trial_seed,
            }
        return gap, record, n_used

    def make_check(trial_seed, style):
        def check():
            gap, record, n_used = run_one(trial_seed, style)
            if record is not None:
                sizes = [(nn,) for nn in range(2, n_used + 1)]
                minimized = _minimize(
                    lambda s: run_one(trial_seed, style, n=s[0])[1], sizes
                )
                record = minimized or record
            return gap, record
        return check

    checks = [
        make_check(s, i % 2) for i, s in enumerate(_trial_seeds(seed, trials))
    ]
    return _run_checks("local_density", seed, checks, jobs)


# ---------------------------------------------------------------------------
# Suite: density lower bounds for the constructed Sidorenko families.
# ---------------------------------------------------------------------------

def _theorem12_instances():
    """Non-uniform replacement instances admitted by the classifier."""
    out = []
    k3 = complete_graph(3)
    uniform = ReplacementSpec.uniform(k3, [2])
    out.append(("nonuniform_divisible_uniform", k3, uniform))
    mixed = ReplacementSpec.from_length_maps(k3, [{2: 2}, {2: 1, 4: 3}, {}])
    out.append(("nonuniform_divisible_mixed", k3, mixed))
    single = ReplacementSpec.from_length_maps(k3, [{4: 2}, {4: 1}, {4: 1}])
    out.append(("nonuniform_single_length", k3, single))
    # Odd subdivision completed by a theta partner on a disjoint edge: the
    # union host is H0 + K2 and the partner tops every length class up to a
    # multiple of C(h, 2).
    host = disjoint_union(k3, Graph(2, ((0, 1),)))
    partner = ReplacementSpec.from_length_maps(
        host, [{2: 1}, {2: 1}, {2: 1}, {2: 7}]
    )
    out.append(("corollary_union", host, partner))
    for name, h, spec in out:
        case = classify_theorem12(h, spec).case
        if case is Theorem12Case.NOT_COVERED:
            raise AssertionError(f"instance {name} rejected by the classifier")
    return out


def sidorenko_family_instances():
    """Named (family, graph, check_mode) triples exercised by the suite."""
    theta2 = generalized_theta([2], "even")
    theta22 = generalized_theta([2, 2], "even")
    theta24 = generalized_theta([2, 4], "even")
    instances = [
        ("C6", replace_edges(complete_graph(3), theta2), "float"),
        ("theta22_K3", replace_edges(complete_graph(3), theta22), "float"),
        ("theta22_K4", replace_edges(complete_graph(4), theta22), "float"),
        ("theta24_K13", replace_edges(complete_multipartite([1, 3]), theta24),
         "float"),
        ("even_theta_224", generalized_theta([2, 2, 4], "even").graph, "float"),
        ("clique_subdiv_h3", semidirect_product(
            path_graph(2), {0}, 2, complete_graph(2), 1), "float"),
        ("clique_subdiv_h4", semidirect_product(
            path_graph(1), {0}, 1, complete_graph(3), 1), "float"),
        ("glued_C4_K3", semidirect_product(
            cycle_graph(4), {0, 2}, 1, complete_graph(3), 1), "float"),
        ("glued_P2_K22", semidirect_product(
            path_graph(2), {0}, 2, complete_multipartite([2, 2]), 1), "float"),
        ("odd_theta_31", generalized_theta([3, 1], "odd").graph, "float"),
        ("odd_theta_53", generalized_theta([5, 3], "odd").graph, "float"),
        ("odd_theta_331", generalized_theta([3, 3, 1], "odd").graph, "float"),
        ("subdiv_C4_l2", subdivide(cycle_graph(4), 2), "float"),
        ("subdiv_K3_l3", subdivide(complete_graph(3), 3), "float"),
        ("subdiv_K4_l1", subdivide(complete_graph(4), 1), "float"),
    ]
    for name, host, spec in _theorem12_instances():
        instances.append((name, replace_edges_nonuniform(host, spec), "float"))
    return instances


def verify_sidorenko_families(trials: int = 100, seed: int = 0,
                              jobs: int = 1) -> SuiteReport:
    """Every constructed family member must beat the edge-density power bound
    on random regular graphons: float deficits at least -1e-12, and tree
    deficits exactly zero in rational arithmetic."""
    instances = sidorenko_family_instances()

    def run_family(name, graph, trial_seed, n=None):
        rng = random.Random(trial_seed)
        n_used = n if n is not None else rng.randint(2, 5)
        w = _random_regular_graphon(rng, n_used)
        gap = deficit(graph, w, "sidorenko", mode="float")
        record = None
        if gap < -FLOAT_TOL:
            record = {
                "inputs": {"family": name, "graphon": w.to_json_dict()},
                "lhs": gap,
                "rhs": 0.0,
                "gap": gap,
                "trial_seed": trial_seed,
            }
        return gap, record, n_used

    def run_tree(trial_seed, n=None, nv=None):
        rng = random.Random(trial_seed)
        nv_used = nv if nv is not None else rng.randint(2, 6)
        n_used = n if n is not None else rng.randint(2, 5)
        tree = _random_tree(rng, nv_used)
        w = _random_regular_graphon(rng, n_used)
        exact = deficit(tree, w, "sidorenko", mode="exact")
        gap = -abs(float(exact))
        record = None
        if exact != 0:
            record = {
                "inputs": {
                    "family": "tree",
                    "tree": tree.to_json_dict(),
                    "graphon": w.to_json_dict(),
                },
                "lhs": _frac_str(exact),
                "rhs": "0/1",
                "gap": gap,
                "trial_seed": trial_seed,
            }
        return gap, record, (n_used, nv_used)

    checks = []
    seeds = _trial_seeds(seed, trials)
    for name, graph, _mode in instances:
        for trial_seed in seeds:
            def check(name=name, graph=graph, trial_seed=trial_seed):
                gap, record, n_used = run_family(name, graph, trial_seed)
                if record is not None:
                    sizes = [(nn,) for nn in range(2, n_used + 1)]
                    minimized = _minimize(
                        lambda s: run_family(name, graph, trial_seed, n=s[0])[1],
                        sizes,
                    )
                    record = minimized or record
                return gap, record
            checks.append(check)
    for trial_seed in seeds:
        def tree_check(trial_seed=trial_seed):
            gap, record, (n_used, nv_used) = run_tree(trial_seed)
            if record is not None:
                sizes = sorted(
                    (nn, vv)
                    for nn in range(2, n_used + 1)
                    for vv in range(2, nv_used + 1)
                )
                minimized = _minimize(
                    lambda s: run_tree(trial_seed, n=s[0], nv=s[1])[1], sizes
                )
                record = minimized or record
            return gap, record
        checks.append(tree_check)
    return _run_checks("sidorenko_families", seed, checks, jobs)


# ---------------------------------------------------------------------------
# Suite: flowers against locally dense graphons.
# ---------------------------------------------------------------------------

def verify_flower_knrs(trials: int = 100, seed: int = 0,
                       jobs: int = 1) -> SuiteReport:
    """Cycle bouquets must beat d^e on graphons that are pointwise at least d
    (hence d-locally dense), including mixtures of such graphons."""
    from .graphs import flower as make_flower

    def run_one(trial_seed, n=None, cycles=None):
        rng = random.Random(trial_seed)
        cycles_drawn = [rng.randint(3, 6) for _ in range(rng.randint(1, 3))]
        n_drawn = rng.randint(2, 5)
        cycles_used = cycles if cycles is not None else cycles_drawn
        n_used = n if n is not None else n_drawn
        graph = make_flower(cycles_used)
        d = Fraction(rng.randint(2, 8), 10)
        w = pointwise_dense_graphon(
            n_used, d, Fraction(rng.randint(1, 4), 4), rng.randrange(2 ** 31)
        )
        if rng.random() < 0.3:
            w2 = pointwise_dense_graphon(
                n_used, d, Fraction(1, 4), rng.randrange(2 ** 31)
            )
            w = mixture_graphon([w, w2], [Fraction(1, 2), Fraction(1, 2)])
        gap = deficit(graph, w, "knrs", d=d, mode="float")
        record = None
        if gap < -FLOAT_TOL:
            record = {
                "inputs": {
                    "cycles": list(cycles_used),
                    "d": _frac_str(d),
                    "graphon": w.to_json_dict(),
                },
                "lhs": gap,
                "rhs": 0.0,
                "gap": gap,
                "trial_seed": trial_seed,
            }
        return gap, record, (n_used, cycles_used)

    def make_check(trial_seed):
        def check():
            gap, record, (n_used, cycles_used) = run_one(trial_seed)
            if record is not None:
                sizes = [(nn,) for nn in range(2, n_used + 1)]
                minimized = _minimize(
                    lambda s: run_one(trial_seed, n=s[0])[1], sizes
                )
                record = minimized or record
            return gap, record
        return check

    checks = [make_check(s) for s in _trial_seeds(seed, trials)]
    return _run_checks("flower_knrs", seed, checks, jobs)


# ---------------------------------------------------------------------------
# Suite: uniformization lower bound.
# ---------------------------------------------------------------------------

def verify_holder(trials: int = 50, seed: int = 0, jobs: int = 1) -> SuiteReport:
    """The replaced-graph density must dominate the uniformized bound built
    from averaged path exponents, with exact equality when the host is
    complete and the replacement is uniform."""

    def run_equality(trial_seed, n=None):
        rng = random.Random(trial_seed)
        n_used = n if n is not None else rng.randint(2, 4)
        h = rng.randint(2, 3)
        host = complete_graph(h)
        lengths = [2 * rng.randint(1, 2) for _ in range(rng.randint(1, 2))]
        spec = ReplacementSpec.uniform(host, lengths)
        w = _random_regular_graphon(rng, n_used)
        replaced = replace_edges_nonuniform(host, spec)
        lhs = hom_density(replaced, w).value
        rhs = holder_lower_bound(host, spec, w).value
        gap = -abs(float(lhs - rhs))
        record = None
        if lhs != rhs:
            record = {
                "inputs": {
                    "kind": "uniform-complete-equality",
                    "host": host.to_json_dict(),
                    "spec": spec.to_json_dict(),
                    "graphon": w.to_json_dict(),
                },
                "lhs": _frac_str(lhs),
                "rhs": _frac_str(rhs),
                "gap": gap,
                "trial_seed": trial_seed,
            }
        return gap, record, n_used

    def run_inequality(trial_seed, n=None):
        rng = random.Random(trial_seed)
        n_used = n if n is not None else rng.randint(2, 4)
        nv = rng.randint(2, 4)
        host = _random_graph(rng, nv)
        maps = [
            {2 * rng.randint(1, 2): 1 for _ in range(rng.randint(1, 2))}
            for _ in host.edges
        ]
        spec = ReplacementSpec.from_length_maps(host, maps)
        w = _random_regular_graphon(rng, n_used)
        replaced = replace_edges_nonuniform(host, spec)
        lhs = float(hom_density(replaced, w, mode="float").value)
        rhs = float(holder_lower_bound(host, spec, w, mode="float").value)
        gap = lhs - rhs
        record = None
        if not _rel_ok(lhs, rhs, FLOAT_TOL):
            record = {
                "inputs": {
                    "kind": "random-replacement",
                    "host": host.to_json_dict(),
                    "spec": spec.to_json_dict(),
                    "graphon": w.to_json_dict(),
                },
                "lhs": lhs,
                "rhs": rhs,
                "gap": gap,
                "trial_seed": trial_seed,
            }
        return gap, record, n_used

    def make_check(trial_seed, equality):
        run = run_equality if equality else run_inequality

        def check():
            gap, record, n_used = run(trial_seed)
            if record is not None:
                sizes = [(nn,) for nn in range(2, n_used + 1)]
                minimized = _minimize(lambda s: run(trial_seed, n=s[0])[1], sizes)
                record = minimized or record
            return gap, record
        return check

    checks = [
        make_check(s, i % 5 == 0)
        for i, s in enumerate(_trial_seeds(seed, trials))
    ]
    return _run_checks("holder", seed, checks, jobs)


SUITES = {
    "lemma31": verify_counting_identity,
    "local_density": verify_local_density,
    "sidorenko_families": verify_sidorenko_families,
    "flower_knrs": verify_flower_knrs,
    "holder": verify_holder,
}
