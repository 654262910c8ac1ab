"""SVG chart emission."""

import numpy as np
import pytest

from qrefine.encoding import DyadicVector
from qrefine.linalg import LinearSystem
from qrefine.plots import decay_svg, emit_plots, trajectory_svg
from qrefine.refine import RefinementConfig, RefinementTrace, refine

from helpers import irrational_system


def test_emit_both_charts_for_two_unknowns(tmp_path):
    system, truth = irrational_system()
    trace = refine(system, RefinementConfig(m_max=20, l_min=-40), truth=truth)
    paths = emit_plots(trace, str(tmp_path / "run"), truth=truth)
    assert paths == [str(tmp_path / "run_decay.svg"), str(tmp_path / "run_trajectory.svg")]
    decay = (tmp_path / "run_decay.svg").read_text(encoding="utf-8")
    traj = (tmp_path / "run_trajectory.svg").read_text(encoding="utf-8")
    assert decay.startswith("<svg")
    assert traj.startswith("<svg")
    assert "polyline" in decay
    assert "polyline" in traj
    # decade labels cover the full error range of this run
    assert ">1e3<" in decay
    assert ">1e-13<" in decay
    # truth marker present and labeled
    assert "solution" in traj


def test_no_truth_skips_decay(tmp_path):
    system, _ = irrational_system()
    trace = refine(system, RefinementConfig(m_max=12, l_min=-2))
    paths = emit_plots(trace, str(tmp_path / "run"))
    assert paths == [str(tmp_path / "run_trajectory.svg")]


def test_three_unknowns_skip_trajectory(tmp_path):
    system = LinearSystem(a=np.eye(3), b=np.array([1.0, 2.0, 3.0]))
    truth = np.array([1.0, 2.0, 3.0])
    trace = refine(system, RefinementConfig(m_max=2, l_min=0), truth=truth)
    paths = emit_plots(trace, str(tmp_path / "run"), truth=truth)
    assert paths == [str(tmp_path / "run_decay.svg")]


def test_trajectory_rejects_wrong_dimension():
    system = LinearSystem(a=np.eye(3), b=np.array([1.0, 2.0, 3.0]))
    trace = refine(system, RefinementConfig(m_max=2, l_min=0))
    with pytest.raises(ValueError):
        trajectory_svg(trace)


def test_empty_trace_rejected(tmp_path):
    trace = RefinementTrace(
        records=(),
        final_center=DyadicVector.from_floats([0.0, 0.0]),
        total_qubo_solves=0,
        terminated_by="level-exhausted",
    )
    with pytest.raises(ValueError):
        emit_plots(trace, str(tmp_path / "run"))


def test_single_record_trace_is_valid(tmp_path):
    # one stalled solve: the decay chart degenerates to a point, not an error
    system = LinearSystem(a=np.array([[1.0]]), b=np.array([0.25]))
    trace = refine(system, RefinementConfig(m_max=0, l_min=0), truth=np.array([0.25]))
    assert len(trace.records) == 1
    svg = decay_svg(trace)
    assert svg.startswith("<svg")
    assert "circle" in svg
    paths = emit_plots(trace, str(tmp_path / "run"), truth=[0.25])
    assert paths == [str(tmp_path / "run_decay.svg")]


def test_all_zero_errors_still_render():
    system = LinearSystem(a=np.array([[1.0]]), b=np.array([0.0]))
    trace = refine(system, RefinementConfig(m_max=0, l_min=0), truth=np.array([0.0]))
    assert all(r.error_vs_truth == 0.0 for r in trace.records)
    svg = decay_svg(trace)
    assert "no positive errors to plot" in svg
