import os
import sys

sys.path.append(os.path.join(os.path.dirname(__file__), ".."))
from src.analytics import alert_flags, bounds_frame, evaluate_flags, tightness_summary
from src.bounds import bounds_report
from src.graphs import complete_graph, net_graph, path_graph, star_graph


def _frame(*graphs):
    return bounds_frame([bounds_report(g).model_dump(by_alias=True) for g in graphs])


def test_bounds_frame_columns_and_n():
    df = _frame(path_graph(3), net_graph())
    assert list(df["n"]) == [3, 6]
    assert list(df["reg"]) == [2, 4]
    assert "mixedCover" in df.columns


def test_bounds_frame_empty():
    df = bounds_frame([])
    assert df.empty
    assert "reg" in df.columns


def test_tightness_summary():
    summary = tightness_summary(_frame(complete_graph(3), path_graph(3), star_graph(3)))
    rows = {row["n"]: row for row in summary.to_dict(orient="records")}
    assert rows[3]["graphs"] == 2
    # K3: height 2 vs reg 1; P3: height 2 vs reg 2
    assert rows[3]["heightTight"] == 0.5
    assert rows[3]["heightGap"] == 0.5
    assert rows[4]["cTight"] == 0.0
    assert rows[4]["mixedCoverTight"] == 1.0


def test_tightness_summary_empty():
    assert tightness_summary(bounds_frame([])).empty


def test_evaluate_flags_incomparability_witnesses():
    flags = evaluate_flags(_frame(net_graph(), star_graph(3)), [])
    assert flags == {"violations": False, "eta_below_height": True, "height_below_eta": True}


def test_evaluate_flags_violations_without_bounds():
    flags = evaluate_flags(bounds_frame([]), [{"graph6": "A_"}])
    assert flags == {"violations": True, "eta_below_height": False, "height_below_eta": False}


def test_alert_flags_keep_only_violations():
    assert alert_flags({"violations": False, "eta_below_height": True}) == {"violations": False}
    assert alert_flags({}) == {"violations": False}
