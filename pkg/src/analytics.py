"""
Analytics Module

Tightness of each regularity bound across a sweep, and the flags raised on
its results (violations, and witnesses that eta and hgt are incomparable).
"""

from typing import Any, Dict, List

import pandas as pd

BOUND_COLUMNS = ["height", "c", "mixedCover", "eta", "ohtani", "proofBound", "vertexBound"]


def bounds_frame(reports: List[Dict[str, Any]]) -> pd.DataFrame:
    """
    One row per bounds report (as dumped by BoundsReport.model_dump(by_alias=True)),
    with the vertex count n decoded from the graph6 header byte.
    """
    columns = ["graph6", "n", "reg"] + BOUND_COLUMNS
    if not reports:
        return pd.DataFrame(columns=columns)
    df = pd.DataFrame(reports)
    df["n"] = df["graph6"].map(lambda g: ord(g[0]) - 63)
    return df[columns]


def tightness_summary(df: pd.DataFrame) -> pd.DataFrame:
    """
    Per vertex count: the number of graphs, and for every bound the share of
    graphs where it equals reg and the mean gap bound - reg.
    """
    if df.empty:
        return pd.DataFrame(columns=["n", "graphs"])
    rows = []
    for n, group in df.groupby("n", sort=True):
        row: Dict[str, Any] = {"n": int(n), "graphs": int(len(group))}
        for column in BOUND_COLUMNS:
            gap = group[column] - group["reg"]
            row[f"{column}Tight"] = round(float((gap == 0).mean()), 4)
            row[f"{column}Gap"] = round(float(gap.mean()), 4)
        rows.append(row)
    return pd.DataFrame(rows)


def evaluate_flags(df: pd.DataFrame, violations: List[Dict[str, Any]]) -> Dict[str, bool]:
    """
    violations: any case broke a checked inequality.
    eta_below_height / height_below_eta: graphs on which reg <= eta and
    reg <= hgt are each the strictly better bound (the net and K_{1,m} kinds).
    """
    flags = {"violations": bool(violations)}
    if df.empty:
        flags["eta_below_height"] = False
        flags["height_below_eta"] = False
        return flags
    flags["eta_below_height"] = bool((df["eta"] < df["height"]).any())
    flags["height_below_eta"] = bool((df["height"] < df["eta"]).any())
    return flags


def alert_flags(flags: Dict[str, bool]) -> Dict[str, bool]:
    """Only violations are alert conditions; the incomparability witnesses are informational."""
    return {"violations": flags.get("violations", False)}
