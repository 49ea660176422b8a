import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from sidlab.graphs import generalized_theta
from sidlab.stepgraphon import (
    SearchBudget,
    StepGraphon,
    circulant_graphon,
    constant_graphon,
    counting_kernel,
    edge_density,
    generate,
    hadamard,
    kernel_compose,
    kernel_power,
    local_density_deficit,
    mixture_graphon,
    permute_steps,
    pointwise_dense_graphon,
    regular_graph_graphon,
    regularity,
    weighted_reiher_check,
)

BIP = StepGraphon([[0, 1], [1, 0]])
C5 = circulant_graphon([0, 1, 0, 0, 1])


def random_symmetric(rng, n, den=6):
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = F(rng.randrange(den + 1), den)
            grid[i][j] = grid[j][i] = x
    return StepGraphon(grid)


# -- construction invariants -------------------------------------------------

def test_rejects_asymmetric():
    with pytest.raises(ValueError, match="symmetric"):
        StepGraphon([[0, 1], [0, 0]])


def test_rejects_out_of_range():
    with pytest.raises(ValueError, match="0, 1"):
        StepGraphon([[2]])


def test_rejects_nonsquare():
    with pytest.raises(ValueError):
        StepGraphon([[0, 1]])


def test_json_roundtrip_exact_and_float():
    w = random_symmetric(random.Random(1), 3)
    assert StepGraphon.from_json_dict(w.to_json_dict()) == w
    f = w.to_json_dict(mode="float")
    assert f["values"][0][1] == float(w.values[0][1])


# -- edge density and regularity ---------------------------------------------

def test_edge_density_constant():
    assert edge_density(constant_graphon(F(1, 2), 3)) == F(1, 2)


def test_edge_density_bipartite():
    assert edge_density(BIP) == F(1, 2)


def test_edge_density_c5():
    assert edge_density(C5) == F(2, 5)


def test_regularity_constant():
    d, rows = regularity(constant_graphon(F(1, 3), 4))
    assert d == F(1, 3) and set(rows) == {F(1, 3)}


def test_regularity_bipartite():
    assert regularity(BIP)[0] == F(1, 2)


def test_regularity_detects_irregular():
    d, rows = regularity(StepGraphon([[1, 0], [0, 0]]))
    assert d is None
    assert rows == (F(1, 2), F(0))


# -- kernel powers -----------------------------------------------------------

def test_kernel_power_identity():
    assert kernel_power(BIP, 1) == BIP


def test_kernel_power_constant():
    assert kernel_power(constant_graphon(F(1, 3), 2), 3) == constant_graphon(
        F(1, 27), 2
    )


def test_kernel_power_bipartite_square():
    assert kernel_power(BIP, 2) == StepGraphon([[F(1, 2), 0], [0, F(1, 2)]])


def test_kernel_power_c5_square_values():
    k = kernel_power(C5, 2)
    assert k.values[0][0] == F(2, 5)
    assert k.values[0][1] == 0
    assert k.values[0][2] == F(1, 5)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=1, max_value=3),
       st.integers(min_value=1, max_value=3))
def test_kernel_power_composes(seed, j, k):
    w = random_symmetric(random.Random(seed), 3)
    lhs = kernel_power(w, j + k)
    rhs = kernel_compose(kernel_power(w, j), kernel_power(w, k))
    assert lhs == rhs


def test_regular_kernel_power_degree():
    # degree of the k-th kernel power of a d-regular graphon is exactly d^k
    for k in range(1, 5):
        d, _ = regularity(kernel_power(C5, k))
        assert d == F(2, 5) ** k


# -- counting kernels --------------------------------------------------------

def test_counting_kernel_path_equals_power():
    for k in (1, 2, 3):
        gadget = generalized_theta([k])
        assert counting_kernel(C5, gadget) == kernel_power(C5, k)


def test_counting_kernel_theta_is_hadamard_of_powers():
    rng = random.Random(5)
    for _ in range(10):
        w = random_symmetric(rng, rng.randint(2, 4))
        lengths = [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
        while lengths.count(1) > 1:
            lengths[lengths.index(1)] = 2
        gadget = generalized_theta(lengths)
        expected = kernel_power(w, lengths[0])
        for length in lengths[1:]:
            expected = hadamard(expected, kernel_power(w, length))
        assert counting_kernel(w, gadget) == expected


def test_counting_kernel_constant_theta22():
    w = constant_graphon(F(1, 3), 2)
    assert counting_kernel(w, generalized_theta([2, 2], "even")) == \
        constant_graphon(F(1, 3) ** 4, 2)


def test_counting_kernel_c5_theta22_frozen_values():
    k = counting_kernel(C5, generalized_theta([2, 2], "even"))
    assert k.values[0][0] == F(4, 25)
    assert k.values[0][1] == 0
    assert k.values[0][2] == F(1, 25)


# -- hadamard ----------------------------------------------------------------

def test_hadamard_ones_identity():
    w = random_symmetric(random.Random(2), 3)
    assert hadamard(w, constant_graphon(F(1), 3)) == w


def test_hadamard_constants():
    assert hadamard(constant_graphon(F(1, 2), 2), constant_graphon(F(1, 3), 2)) \
        == constant_graphon(F(1, 6), 2)


def test_hadamard_entrywise():
    assert hadamard(BIP, constant_graphon(F(1, 2), 2)) == StepGraphon(
        [[0, F(1, 2)], [F(1, 2), 0]]
    )


def test_hadamard_shape_mismatch():
    with pytest.raises(ValueError):
        hadamard(BIP, constant_graphon(F(1, 2), 3))


# -- local density -----------------------------------------------------------

def test_local_density_constant_is_tight():
    rep = local_density_deficit(constant_graphon(F(1, 2), 3), F(1, 2))
    assert rep.deficit == 0.0


def test_local_density_pointwise_bound():
    w = pointwise_dense_graphon(4, F(3, 10), F(1, 2), seed=11)
    rep = local_density_deficit(w, F(3, 10))
    assert rep.deficit >= 0.0


def test_local_density_corner_insufficiency_instance():
    # all four corners satisfy the subset bound, yet a fractional occupancy
    # violates it, so the checker must search inside the box
    w = StepGraphon([[F(8, 10), F(1, 20)], [F(1, 20), F(35, 100)]])
    d = F(3, 10)
    corners = [(0, 0), (1, 0), (0, 1), (1, 1)]
    from sidlab.stepgraphon import _quadratic_exact

    assert all(_quadratic_exact(w, d, s) >= 0 for s in corners)
    rep = local_density_deficit(w, d)
    assert rep.deficit <= -0.01875 + 1e-12
    assert rep.method in ("grid", "descent")
    assert any(0 < x < 1 for x in rep.witness)
    assert _quadratic_exact(w, d, (F(1, 2), F(1))) == F(-3, 160)


def test_local_density_witness_recheck_is_exact():
    w = random_symmetric(random.Random(3), 4)
    rep = local_density_deficit(w, F(1, 2))
    from sidlab.stepgraphon import _quadratic_exact

    again = _quadratic_exact(w, F(1, 2), rep.witness)
    assert abs(float(again) - rep.deficit) <= 1e-12
    assert again == rep.deficit_exact


def test_local_density_report_json():
    rep = local_density_deficit(constant_graphon(F(1, 4), 2), F(1, 4))
    data = rep.to_json_dict()
    assert data["method"] in ("corners", "grid", "descent")
    assert len(data["witness"]) == 2


def test_local_density_rejects_bad_target():
    with pytest.raises(ValueError):
        local_density_deficit(BIP, F(3, 2))


def test_c5_theta22_kernel_locally_dense():
    # kernel of an even theta over a 2/5-regular graphon against (2/5)^4
    k = counting_kernel(C5, generalized_theta([2, 2], "even"))
    rep = local_density_deficit(k, F(2, 5) ** 4)
    assert rep.deficit >= -1e-9


def test_hadamard_attachment_c5_locally_dense():
    # pointwise-dense floor times an even kernel power of a regular graphon
    w1 = pointwise_dense_graphon(5, F(3, 10), F(1, 2), seed=3)
    k = hadamard(w1, kernel_power(C5, 2))
    rep = local_density_deficit(k, F(3, 10) * F(2, 5) ** 2)
    assert rep.deficit >= -1e-9


def test_descent_finds_fractional_violation_when_grid_disabled():
    w = StepGraphon([[F(8, 10), F(1, 20)], [F(1, 20), F(35, 100)]])
    budget = SearchBudget(corner_limit=0, grid_limit=0, starts=64, iters=300)
    rep = local_density_deficit(w, F(3, 10), budget)
    assert rep.method == "descent"
    assert rep.deficit <= -0.018


# -- weighted subset inequality ----------------------------------------------

def test_weighted_check_zero_weights():
    lhs, rhs, ok = weighted_reiher_check(BIP, F(1, 2), [0, 0])
    assert lhs == rhs == 0 and ok


def test_weighted_check_full_weights_constant():
    w = constant_graphon(F(1, 3), 3)
    lhs, rhs, ok = weighted_reiher_check(w, F(1, 3), [1, 1, 1])
    assert ok and abs(lhs - rhs) < 1e-15


def test_weighted_check_c5_square_kernel_random_weights():
    k = kernel_power(C5, 2)
    d = F(2, 5) ** 2
    rng = random.Random(17)
    for _ in range(100):
        f = [rng.random() for _ in range(5)]
        lhs, rhs, ok = weighted_reiher_check(k, d, f)
        assert ok, (f, lhs, rhs)


def test_weighted_check_rejects_bad_weights():
    with pytest.raises(ValueError):
        weighted_reiher_check(BIP, F(1, 2), [0.5, 1.5])


# -- generators --------------------------------------------------------------

def test_generate_constant():
    w = generate("constant", d=F(1, 3), n=4)
    assert regularity(w)[0] == F(1, 3)


def test_generate_circulant_c5():
    assert generate("circulant", profile=[0, 1, 0, 0, 1]) == C5
    assert regularity(C5)[0] == F(2, 5)


def test_circulant_requires_symmetric_profile():
    with pytest.raises(ValueError):
        circulant_graphon([0, 1, 0])


def test_generate_regular_graph():
    w = generate("regular_graph", n=8, deg=3, seed=1)
    d, _ = regularity(w)
    assert d == F(3, 8)
    assert all(x in (F(0), F(1)) for row in w.values for x in row)
    assert all(w.values[i][i] == 0 for i in range(8))


def test_generate_regular_graph_deterministic():
    a = generate("regular_graph", n=10, deg=3, seed=42)
    b = generate("regular_graph", n=10, deg=3, seed=42)
    assert a == b


def test_generate_regular_graph_infeasible():
    with pytest.raises(ValueError):
        regular_graph_graphon(5, 3, seed=0)  # odd n*deg
    with pytest.raises(ValueError):
        regular_graph_graphon(4, 4, seed=0)  # deg >= n


def test_mixture_preserves_regularity():
    a = circulant_graphon([0, F(1, 2), F(1, 2)])
    b = regular_graph_graphon(3, 2, seed=3)
    m = mixture_graphon([a, b], [F(1, 4), F(3, 4)])
    d, _ = regularity(m)
    assert d == F(1, 4) * regularity(a)[0] + F(3, 4) * regularity(b)[0]


def test_mixture_weight_validation():
    with pytest.raises(ValueError):
        mixture_graphon([BIP, BIP], [F(1, 2), F(1, 4)])


def test_pointwise_dense_floor():
    w = generate("pointwise_dense", n=5, d=F(2, 5), noise=F(1, 2), seed=9)
    assert all(x >= F(2, 5) for row in w.values for x in row)
    assert all(x <= 1 for row in w.values for x in row)


def test_generate_unknown_kind():
    with pytest.raises(ValueError):
        generate("spectral", n=2)


def test_permute_steps_preserves_density():
    w = random_symmetric(random.Random(8), 4)
    p = permute_steps(w, [2, 0, 3, 1])
    assert edge_density(p) == edge_density(w)
    assert sorted(map(sorted, p.values)) == sorted(map(sorted, w.values))
