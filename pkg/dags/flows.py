"""
Prefect flows running the verification sweeps on a schedule.

    python -m dags.flows        serves all three flows with the cron settings
"""

import os

from prefect import flow, serve, task

from src import monitoring, storage, sweeps
from src.settings import load_settings

settings = load_settings(env=os.getenv("BEILAB_ENV"))


def _paths(name: str) -> tuple[str, str]:
    """(resume cache, report file) for a sweep under the data directory."""
    return (
        os.path.join(settings.data_dir, "cache", f"{name}.jsonl"),
        os.path.join(settings.data_dir, "reports", f"{name}.json"),
    )


def _finish(name: str, report: sweeps.SweepReport) -> None:
    _, report_path = _paths(name)
    task(storage.write_report)(report.model_dump(by_alias=True), report_path)
    monitoring.log_event("flow_report_written", {"sweep": name, "path": report_path, "holds": report.holds})


@flow(name="sweep_height")
def sweep_height():
    """
    reg <= hgt and every other bound over all connected graphs up to sweep.max_n.
    """
    cache, _ = _paths("height")
    report = task(sweeps.check_height)(
        max_n=settings.sweep.max_n,
        p=settings.char,
        jobs=settings.jobs,
        resume=cache,
        max_vertices=settings.max_reg_vertices,
    )
    _finish("height", report)


@flow(name="sweep_subadditivity")
def sweep_subadditivity():
    """
    Subadditivity over edge splits. Exhaustive splits stop at five vertices,
    larger graphs are sampled with the configured seed.
    """
    splits = settings.sweep.splits
    max_n = min(settings.sweep.max_n, sweeps.ALL_SPLITS_MAX_N) if splits == "all" else settings.sweep.max_n
    cache, _ = _paths(f"subadditivity_{splits}")
    report = task(sweeps.check_subadditivity)(
        max_n=max_n,
        splits=splits,
        samples=settings.sweep.samples,
        seed=settings.sweep.seed,
        p=settings.char,
        jobs=settings.jobs,
        resume=cache,
        max_vertices=settings.max_reg_vertices,
    )
    _finish(f"subadditivity_{splits}", report)


@flow(name="sweep_decompositions")
def sweep_decompositions():
    cache, _ = _paths("decompositions")
    report = task(sweeps.check_decompositions)(
        max_n=settings.sweep.max_n,
        p=settings.char,
        jobs=settings.jobs,
        resume=cache,
        max_vertices=settings.max_reg_vertices,
    )
    _finish("decompositions", report)


if __name__ == "__main__":
    serve(
        sweep_height.to_deployment(name="sweep-height", cron=settings.sweep_height_cron),
        sweep_subadditivity.to_deployment(name="sweep-subadditivity", cron=settings.sweep_subadditivity_cron),
        sweep_decompositions.to_deployment(name="sweep-decompositions", cron=settings.sweep_decomposition_cron),
    )
