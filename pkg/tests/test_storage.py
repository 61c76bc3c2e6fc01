import json
import os
import sys
from unittest.mock import patch

import pandas as pd
import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), ".."))
from src.storage import ResultCache, open_cache, read_df, write_df, write_report


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "cache" / "sweep.jsonl")
    with open_cache(path) as cache:
        cache.append({"graph6": "A_", "cases": 1})
        cache.append({"graph6": "Bw", "cases": 13})
    assert ResultCache(path).load() == {"A_": {"graph6": "A_", "cases": 1}, "Bw": {"graph6": "Bw", "cases": 13}}


def test_cache_later_record_wins(tmp_path):
    path = str(tmp_path / "sweep.jsonl")
    with open_cache(path) as cache:
        cache.append({"graph6": "A_", "cases": 1})
        cache.append({"graph6": "A_", "cases": 2})
    assert ResultCache(path).load()["A_"]["cases"] == 2


@patch("src.storage.log_event")
def test_cache_skips_truncated_line(mock_log_event, tmp_path):
    path = tmp_path / "sweep.jsonl"
    path.write_text('{"graph6": "A_", "cases": 1}\n{"graph6": "B')
    assert list(ResultCache(str(path)).load()) == ["A_"]
    mock_log_event.assert_any_call("storage_cache_truncated_line", {"path": str(path), "line": 2})


def test_cache_open_terminates_partial_line(tmp_path):
    path = tmp_path / "sweep.jsonl"
    path.write_text('{"graph6": "A_", "cases": 1}\n{"graph6": "B')
    with open_cache(str(path)) as cache:
        cache.append({"graph6": "Bw", "cases": 13})
    assert set(ResultCache(str(path)).load()) == {"A_", "Bw"}


def test_cache_missing_file_is_empty(tmp_path):
    assert ResultCache(str(tmp_path / "absent.jsonl")).load() == {}


def test_append_requires_open(tmp_path):
    with pytest.raises(RuntimeError):
        ResultCache(str(tmp_path / "sweep.jsonl")).append({"graph6": "A_"})


def test_open_cache_without_path():
    with open_cache(None) as cache:
        assert cache is None


def test_write_df_returns_csv(tmp_path):
    df = pd.DataFrame([{"graph6": "A_", "reg": 1}])
    path = tmp_path / "out.csv"
    text = write_df(df, str(path))
    assert text.splitlines() == ["graph6,reg", "A_,1"]
    assert path.read_text() == text


def test_read_df_flattens_records(tmp_path):
    path = tmp_path / "sweep.jsonl"
    path.write_text('{"graph6": "A_", "bounds": {"reg": 1}}\nnot json\n')
    df = read_df(str(path))
    assert list(df["bounds.reg"]) == [1]


def test_read_df_missing_file(tmp_path):
    assert read_df(str(tmp_path / "absent.jsonl")).empty


def test_write_report(tmp_path):
    path = tmp_path / "reports" / "height.json"
    write_report({"sweep": "height", "graphs": 3}, str(path))
    assert json.loads(path.read_text()) == {"graphs": 3, "sweep": "height"}
