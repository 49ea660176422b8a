import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sidlab.contraction import WidthCapExceeded
from sidlab.graphs import (
    Graph,
    ReplacementSpec,
    complete_graph,
    cycle_graph,
    disjoint_union,
    generalized_theta,
    path_graph,
    replace_edges,
    replace_edges_nonuniform,
)
from sidlab.homdensity import (
    DensityValue,
    deficit,
    density_gradient,
    elimination_order,
    holder_lower_bound,
    hom_density,
)
from sidlab.stepgraphon import (
    StepGraphon,
    circulant_graphon,
    constant_graphon,
    counting_kernel,
    pointwise_dense_graphon,
)

BIP = StepGraphon([[0, 1], [1, 0]])


def random_symmetric(rng, n, den=6):
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = F(rng.randrange(den + 1), den)
            grid[i][j] = grid[j][i] = x
    return StepGraphon(grid)


def random_graph(rng, nv):
    edges = [
        (u, v) for u in range(nv) for v in range(u + 1, nv)
        if rng.random() < 0.6
    ]
    return Graph(nv, tuple(edges))


def loop_oracle(graph, w):
    """Third, utterly naive implementation: explicit map enumeration."""
    n = w.n_steps
    total = F(0)
    for phi in itertools.product(range(n), repeat=graph.n):
        prod = F(1)
        for u, v in graph.edges:
            prod *= w.values[phi[u]][phi[v]]
        total += prod
    return total / F(n) ** graph.n


# -- densities ---------------------------------------------------------------

def test_k3_on_constant_half():
    assert hom_density(complete_graph(3), constant_graphon(F(1, 2), 3)).value \
        == F(1, 8)


def test_c4_on_bipartite():
    dv = hom_density(cycle_graph(4), BIP)
    assert dv.value == F(1, 8)
    assert dv.value == loop_oracle(cycle_graph(4), BIP)


def test_pinned_single_edge():
    dv = hom_density(Graph(2, ((0, 1),)), BIP, pins={0: 0, 1: 1})
    assert dv.value == 1
    assert dv.scale_exponent == 0


def test_pin_collision_rejected():
    with pytest.raises(ValueError, match="collision"):
        hom_density(Graph(2, ((0, 1),)), BIP, pins=[(0, 0), (0, 1)])


def test_pin_out_of_range():
    with pytest.raises(ValueError):
        hom_density(Graph(2, ((0, 1),)), BIP, pins={0: 5})


def test_edgeless_graph_density_is_one():
    assert hom_density(Graph(3), BIP).value == 1


def test_float_mode_matches_exact():
    rng = random.Random(13)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 5))
        w = random_symmetric(rng, rng.randint(2, 4))
        exact = hom_density(g, w).value
        fl = hom_density(g, w, mode="float").value
        assert abs(float(exact) - fl) < 1e-12


def test_bruteforce_guard():
    with pytest.raises(ValueError, match="refused"):
        hom_density(Graph(30), constant_graphon(F(1, 2), 4),
                    strategy="bruteforce")


def test_width_cap_enforced():
    g = complete_graph(6)  # induced width 5
    with pytest.raises(WidthCapExceeded):
        hom_density(g, BIP, width_cap=4)
    hom_density(g, BIP, width_cap=5)


def test_elimination_order_reports_width():
    order = elimination_order(4, cycle_graph(4).edges)
    assert sorted(order.vertices) == [0, 1, 2, 3]
    assert order.width == 2
    assert order.max_arity == order.width + 1
    k5 = complete_graph(5)
    assert elimination_order(5, k5.edges).width == 4


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_eliminate_equals_bruteforce(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 6))
    w = random_symmetric(rng, rng.randint(2, 4))
    a = hom_density(g, w, strategy="eliminate").value
    b = hom_density(g, w, strategy="bruteforce").value
    assert a == b


def test_pins_realize_counting_kernel_entries():
    rng = random.Random(23)
    w = random_symmetric(rng, 3)
    gadget = generalized_theta([2, 4], "even")
    kernel = counting_kernel(w, gadget)
    r1, r2 = gadget.roots
    for x in range(3):
        for y in range(3):
            pinned = hom_density(gadget.graph, w, pins={r1: x, r2: y})
            assert pinned.value == kernel.values[x][y]


def test_counting_identity_instance():
    # replacing K3's edges by a 4-cycle gadget, evaluated two ways
    w = random_symmetric(random.Random(31), 3)
    host = complete_graph(3)
    gadget = generalized_theta([2, 2], "even")
    lhs = hom_density(replace_edges(host, gadget), w).value
    rhs = hom_density(host, counting_kernel(w, gadget)).value
    assert lhs == rhs


@pytest.mark.parametrize("host", [
    complete_graph(2), path_graph(2), complete_graph(3), cycle_graph(4),
    complete_graph(4),
], ids=["K2", "P3", "K3", "C4", "K4"])
@pytest.mark.parametrize("lengths", [[2], [4], [2, 2], [2, 4]],
                         ids=["path2", "path4", "theta22", "theta24"])
def test_counting_identity_grid(host, lengths):
    rng = random.Random(hash((host.edges, tuple(lengths))) & 0xFFFF)
    gadget = generalized_theta(lengths, "even")
    for _ in range(2):
        w = random_symmetric(rng, rng.randint(2, 4))
        lhs = hom_density(replace_edges(host, gadget), w).value
        rhs = hom_density(host, counting_kernel(w, gadget)).value
        assert lhs == rhs


def test_tree_density_on_regular_graphon_is_degree_power():
    c5 = circulant_graphon([0, 1, 0, 0, 1])
    star = Graph(4, ((0, 1), (0, 2), (0, 3)))
    assert hom_density(star, c5).value == F(2, 5) ** 3
    assert hom_density(path_graph(3), c5).value == F(2, 5) ** 3


def test_multiplicativity_under_disjoint_union():
    rng = random.Random(41)
    for _ in range(5):
        g1 = random_graph(rng, rng.randint(2, 4))
        g2 = random_graph(rng, rng.randint(2, 4))
        w = random_symmetric(rng, 3)
        lhs = hom_density(disjoint_union(g1, g2), w).value
        rhs = hom_density(g1, w).value * hom_density(g2, w).value
        assert lhs == rhs


def test_monotone_under_entrywise_increase():
    rng = random.Random(43)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 5))
        n = rng.randint(2, 4)
        w1 = random_symmetric(rng, n, den=8)
        bumped = [
            [min(x + F(rng.randrange(3), 8), F(1)) for x in row]
            for row in w1.values
        ]
        for i in range(n):
            for j in range(n):
                bumped[j][i] = bumped[i][j]
        w2 = StepGraphon(bumped)
        t1 = hom_density(g, w1).value
        t2 = hom_density(g, w2).value
        assert t1 <= t2 <= 1


def test_density_value_json_roundtrip():
    dv = DensityValue(F(1, 8), "exact", 4)
    assert DensityValue.from_json_dict(dv.to_json_dict()) == dv
    dv2 = DensityValue(0.125, "float", 4)
    assert DensityValue.from_json_dict(dv2.to_json_dict()) == dv2


def test_density_value_range_checked():
    with pytest.raises(ValueError):
        DensityValue(F(3, 2), "exact", 2)


# -- gradients ---------------------------------------------------------------

def test_gradient_k2_closed_form():
    for n in (2, 3, 4):
        w = constant_graphon(F(1, 2), n)
        g = density_gradient(Graph(2, ((0, 1),)), w)
        for u in range(n):
            for v in range(n):
                expected = F(1, n * n) if u == v else F(2, n * n)
                assert g[u][v] == expected


def fd_gradient(graph, w, h=1e-5):
    from sidlab.contraction import contract_float

    a0 = w.float_matrix
    n = a0.shape[0]
    out = np.zeros((n, n))
    for u in range(n):
        for v in range(u, n):
            ap, am = a0.copy(), a0.copy()
            ap[u, v] += h
            am[u, v] -= h
            if u != v:
                ap[v, u] += h
                am[v, u] -= h
            tp = contract_float(graph.n, graph.edges, ap, n)
            tm = contract_float(graph.n, graph.edges, am, n)
            out[u, v] = out[v, u] = (tp - tm) / (2 * h)
    return out


def test_gradient_matches_finite_differences_c4():
    w = constant_graphon(F(1, 2), 2)
    g = np.array([[float(x) for x in row]
                  for row in density_gradient(cycle_graph(4), w)])
    fd = fd_gradient(cycle_graph(4), w)
    assert np.max(np.abs(g - fd) / np.maximum(np.abs(fd), 1e-9)) < 1e-6


def test_gradient_matches_finite_differences_random():
    rng = random.Random(47)
    for _ in range(6):
        nv = rng.randint(2, 5)
        g = random_graph(rng, nv)
        if g.num_edges == 0:
            continue
        n = rng.randint(2, 4)
        # keep entries away from the box boundary so the stencil stays valid
        grid = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                x = F(rng.randrange(1, 8), 8)
                grid[i][j] = grid[j][i] = x
        w = StepGraphon(grid)
        grad = np.array([[float(x) for x in row]
                         for row in density_gradient(g, w)])
        fd = fd_gradient(g, w)
        rel = np.max(np.abs(grad - fd) / np.maximum(np.abs(fd), 1e-9))
        assert rel < 1e-6, (g, rel)


def test_gradient_float_mode_matches_exact():
    w = random_symmetric(random.Random(53), 3)
    g = cycle_graph(4)
    exact = np.array([[float(x) for x in row]
                      for row in density_gradient(g, w)])
    fl = density_gradient(g, w, mode="float")
    assert np.max(np.abs(exact - fl)) < 1e-13


# -- deficits ----------------------------------------------------------------

def test_tree_deficit_exactly_zero_on_regular():
    c5 = circulant_graphon([0, 1, 0, 0, 1])
    tree = Graph(5, ((0, 1), (1, 2), (1, 3), (3, 4)))
    assert deficit(tree, c5, "sidorenko", mode="exact") == 0


def test_c4_deficit_on_bipartite_graphon():
    assert deficit(cycle_graph(4), BIP, "sidorenko", mode="exact") == F(1, 16)


def test_knrs_deficit_on_pointwise_dense():
    rng = random.Random(59)
    k3 = complete_graph(3)
    for _ in range(100):
        d = F(3, 10)
        w = pointwise_dense_graphon(rng.randint(2, 4), d, F(1, 2),
                                    rng.randrange(2 ** 31))
        assert deficit(k3, w, "knrs", d=d, mode="float") >= 0


def test_knrs_requires_target():
    with pytest.raises(ValueError):
        deficit(complete_graph(3), BIP, "knrs")


def test_flower_triangle_on_constant_is_tight():
    from sidlab.graphs import flower

    w = constant_graphon(F(2, 5), 3)
    assert deficit(flower([3]), w, "knrs", d=F(2, 5), mode="exact") == 0


def test_unit_length_gadget_replacement_is_identity():
    host = complete_graph(3)
    unit = generalized_theta([1])
    assert replace_edges(host, unit) == host


# -- uniformized lower bound ---------------------------------------------------

def test_holder_uniform_complete_host_equality():
    rng = random.Random(61)
    for lengths in ([2], [2, 2], [2, 4]):
        host = complete_graph(3)
        spec = ReplacementSpec.uniform(host, lengths)
        w = random_symmetric(rng, 3)
        bound = holder_lower_bound(host, spec, w)
        assert bound.mode == "exact"
        direct = hom_density(replace_edges_nonuniform(host, spec), w).value
        assert bound.value == direct


def test_holder_constant_graphon_value():
    host = complete_graph(3)
    spec = ReplacementSpec.uniform(host, [2])
    bound = holder_lower_bound(host, spec, constant_graphon(F(1, 2), 2))
    assert bound.value == F(1, 2) ** 6


def test_holder_path_host_fractional_alpha():
    # two-edge path with bundles {2:1} and {2:2}: alpha_2 = 1, still integral
    host = path_graph(2)
    spec = ReplacementSpec.from_length_maps(host, [{2: 1}, {2: 2}])
    assert spec.alphas() == {2: F(1)}
    rng = random.Random(67)
    for _ in range(20):
        half = [F(rng.randrange(13), 12) for _ in range(3)]
        w = circulant_graphon([half[0], half[1], half[2], half[2], half[1]])
        lhs = hom_density(replace_edges_nonuniform(host, spec), w).value
        bound = holder_lower_bound(host, spec, w).value
        assert lhs >= bound


def test_holder_noninteger_alpha_uses_float():
    host = path_graph(2)
    spec = ReplacementSpec.from_length_maps(host, [{2: 1}, {4: 1}])
    assert spec.alphas() == {2: F(1, 3), 4: F(1, 3)}
    w = circulant_graphon([F(1, 2), F(1, 3), F(1, 3)])
    bound = holder_lower_bound(host, spec, w)
    assert bound.mode == "float"
    lhs = float(hom_density(replace_edges_nonuniform(host, spec), w).value)
    assert lhs >= float(bound.value) - 1e-12
    with pytest.raises(ValueError):
        holder_lower_bound(host, spec, w, mode="exact")


def test_holder_zero_weight_entries_use_zero_power_convention():
    host = path_graph(2)
    spec = ReplacementSpec.from_length_maps(host, [{2: 1}, {4: 1}])
    w = StepGraphon([[0, 0], [0, 0]])
    bound = holder_lower_bound(host, spec, w)
    assert float(bound.value) == 0.0
