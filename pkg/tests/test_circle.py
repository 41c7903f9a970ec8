import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conjugate_lab import circle
from conjugate_lab.circle import TWO_PI, ArcSet, CircleGrid, GradedGrid, SampledFn, StepSymbol, TrigPoly

angles = st.floats(-20, 20, allow_nan=False)


def test_circle_grid_nodes_and_weights():
    g = CircleGrid(8, 0.5)
    assert np.allclose(g.nodes, TWO_PI * (np.arange(8) + 0.5) / 8)
    assert abs(g.weights.sum() - TWO_PI) < 1e-12


def test_graded_grid_weights_sum_to_circle():
    g = GradedGrid((0.0, np.pi), depth=30, n_base=1024)
    assert abs(g.weights.sum() - TWO_PI) < 1e-9
    inner = g.anchor_side(0, 1)[-1]
    assert g.delta[inner] == pytest.approx(TWO_PI / 1024 * 0.5 ** 30)


def test_graded_grid_rejects_close_anchors():
    with pytest.raises(ValueError):
        GradedGrid((0.0, 1e-4), n_base=1024)


@st.composite
def disjoint_arcs(draw):
    cuts = draw(st.lists(st.floats(0.0, 6.2), min_size=2, max_size=6, unique=True))
    cuts = sorted(cuts)[: len(cuts) // 2 * 2]
    arcs = [(a, b) for a, b in zip(cuts[::2], cuts[1::2]) if b - a > 1e-3]
    return ArcSet(arcs) if arcs else ArcSet([(0.0, 1.0)])


@given(disjoint_arcs(), angles)
def test_arc_measure_rotation_invariant(E, phi):
    assert abs(E.rotate(phi).measure - E.measure) < 1e-9
    assert 0 <= E.measure <= TWO_PI + 1e-12


def test_arcset_full_and_empty():
    assert ArcSet.full().measure == pytest.approx(TWO_PI)
    assert ArcSet.empty().measure == 0


@given(st.floats(0.05, 6.0), st.floats(0.05, 6.0))
def test_rho_gap_is_two(a, w):
    E = ArcSet([(a, a + min(w, TWO_PI - 0.05))])
    assert circle.essential_range_gap(circle.rho(E)) == 2.0


@given(st.floats(-5, 5, allow_nan=False).filter(lambda c: abs(c) > 1e-3))
def test_sampling_commutes_with_scaling(c):
    f = circle.rho(ArcSet([(0.2, 2.9)]))
    g = CircleGrid(64)
    assert np.allclose(circle.sample(f * c, g).values, c * circle.sample(f, g).values, atol=0)


def test_cell_average_places_jump_inside_cell():
    f = ArcSet([(0.1, 2.0)]).indicator()
    g = CircleGrid(16)
    avg = circle.cell_average(f, g).values
    assert abs(np.sum(avg * g.weights) - 1.9) < 1e-12


def test_trigpoly_real_and_mean():
    p = TrigPoly.from_real(cos=[1.0, 0.5], sin=[0.0, 2.0])
    t = np.linspace(0, TWO_PI, 7)
    assert np.allclose(p(t), 1.0 + 0.5 * np.cos(t) + 2.0 * np.sin(t))
    assert p.is_real and p.mean == pytest.approx(1.0)


def test_step_symbol_jumps_and_sup():
    f = StepSymbol([0, 1.0, 4.0, TWO_PI], [np.pi / 2, 2.0, 1.7])
    angles_, sizes = f.jumps()
    assert len(angles_) == 3
    assert abs(np.sum(sizes)) < 1e-12
    assert f.sup_norm == 2.0


def test_sampled_fn_weight_mismatch():
    with pytest.raises(ValueError):
        SampledFn(CircleGrid(8), np.zeros(7))
