"""
Pipeline
========
Runs independent jobs either inline or over a process pool, and writes
reports atomically.

Workers load their own catalog once (pool initializer) so only job keys
and small result models cross the process boundary.
"""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence, TypeVar

from pydantic import BaseModel

from novikov.catalog import Catalog

logger = logging.getLogger(__name__)

J = TypeVar("J")
R = TypeVar("R")

_CATALOG: Optional[Catalog] = None


def _init_worker(catalog_path: str, samples_path: Optional[str]) -> None:
    global _CATALOG
    logging.getLogger("novikov").setLevel(logging.WARNING)
    _CATALOG = Catalog.load(catalog_path, samples_path)


def worker_catalog() -> Catalog:
    if _CATALOG is None:
        raise RuntimeError("no catalog bound to this worker")
    return _CATALOG


def _guarded(fn: Callable[[J], R], on_error: Callable[[J, Exception], R], job: J) -> R:
    try:
        return fn(job)
    except Exception as e:
        logger.error(f"[{job}] job failed: {e}", exc_info=True)
        return on_error(job, e)


def run_jobs(
    fn: Callable[[J], R],
    jobs: Sequence[J],
    on_error: Callable[[J, Exception], R],
    catalog: Catalog,
    workers: int = 1,
    catalog_path: Path | str | None = None,
    samples_path: Path | str | None = None,
) -> List[R]:
    """
    Apply ``fn`` to every job. ``fn`` must be a module-level function that
    reads the catalog through ``worker_catalog()``. Results come back in job
    order; a raising job becomes ``on_error(job, exc)``.
    """
    global _CATALOG
    if workers <= 1 or len(jobs) <= 1 or catalog_path is None:
        _CATALOG = catalog
        return [_guarded(fn, on_error, job) for job in jobs]

    logger.info(f"Running {len(jobs)} jobs on {workers} worker processes.")
    initargs = (str(catalog_path), str(samples_path) if samples_path else None)
    results: List[R] = []
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=initargs) as pool:
        futures = [pool.submit(fn, job) for job in jobs]
        for job, future in zip(jobs, futures):
            try:
                results.append(future.result())
            except Exception as e:
                logger.error(f"[{job}] worker failed: {e}", exc_info=True)
                results.append(on_error(job, e))
    return results


# ──────────────────────────────────────────────
# Reports
# ──────────────────────────────────────────────

def _write_atomic(path: Path, text: str) -> Path:
    """Write via a temp file + rename so a reader never sees a partial file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{path.name}.tmp")
    with open(tmp, "w", encoding="utf-8") as f:
        f.write(text)
    tmp.replace(path)
    return path


def write_report(report: BaseModel, out_dir: Path | str, name: str) -> Path:
    data = report.model_dump(mode="json")
    text = json.dumps(data, default=str, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    path = _write_atomic(Path(out_dir) / f"{name}.json", text)
    logger.info(f"Report written to {path}")
    return path


def write_text(text: str, out_dir: Path | str, name: str) -> Path:
    return _write_atomic(Path(out_dir) / name, text)
