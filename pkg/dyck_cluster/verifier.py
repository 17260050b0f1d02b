"""
Exhaustive cross-check of the Dyck-path formula against seed mutation.

Every admissible subchain for nmin <= n <= nmax is checked in a separate
worker process; verdicts can be recorded in a Database so an interrupted
run resumes where it stopped.
"""

import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable, List, Optional

from .clusteralg import verify_bijection
from .database import Database
from .dyckcore import configured_max_n
from .errors import DyckClusterError, InvalidInputError
from .models import ChainResult, ChainStatus, RunStatus
from .shiftcat import enumerate_subchains, format_chain, parse_chain

logger = logging.getLogger(__name__)

# Batch size for bulk inserts
BULK_INSERT_SIZE = 16

# CPU bound, one process per core
DEFAULT_WORKERS = multiprocessing.cpu_count() or 1


def verify_chain(n: int, chain: str, seed_cap: Optional[int] = None) -> ChainResult:
    """
    Check one subchain given by its chain spec.

    Runs in a worker process, so it takes and returns plain picklable
    values. Library errors become a FAILED verdict instead of propagating.
    """
    try:
        report = verify_bijection(parse_chain(chain, n), seed_cap)
    except DyckClusterError as e:
        logger.warning(f"{chain} (n={n}) failed: {e}")
        return ChainResult(
            id=None, run_id=None, n=n, chain=chain,
            status=ChainStatus.FAILED,
            error_message=f"{type(e).__name__}: {e}",
            checked_at=datetime.now(),
        )
    return ChainResult(
        id=None,
        run_id=None,
        n=n,
        chain=chain,
        status=ChainStatus.EQUAL if report.equal else ChainStatus.MISMATCH,
        dyck_count=report.dyck_count,
        mutation_count=report.mutation_count,
        missing=report.missing,
        extra=report.extra,
        checked_at=datetime.now(),
    )


@dataclass
class VerifySummary:
    """Results of one harness run, sorted by (n, chain)."""
    nmin: int
    nmax: int
    results: List[ChainResult] = field(default_factory=list)
    skipped: int = 0
    run_id: Optional[int] = None

    @property
    def failures(self) -> List[ChainResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "nmin": self.nmin,
            "nmax": self.nmax,
            "run_id": self.run_id,
            "checked": len(self.results),
            "skipped": self.skipped,
            "ok": self.ok,
            "results": [r.to_json() for r in self.results],
        }


class BijectionVerifier:
    """Runs verify_chain over every subchain in a range of n."""

    def __init__(
        self,
        db: Optional[Database] = None,
        progress_callback: Optional[Callable[[int, int, str], None]] = None,
        num_workers: Optional[int] = None,
        seed_cap: Optional[int] = None,
    ):
        """
        Args:
            db: Ledger to record verdicts in; None keeps results in memory
            progress_callback: Optional callback(done, total, chain_label)
            num_workers: Worker processes (default: CPU count); 1 runs inline
            seed_cap: Seed exploration cap forwarded to the mutation engine
        """
        self.db = db
        self.progress_callback = progress_callback
        self.num_workers = num_workers or DEFAULT_WORKERS
        self.seed_cap = seed_cap

    def _pending(self, nmin: int, nmax: int, resume: bool) -> tuple[list[tuple[int, str]], int]:
        jobs = [
            (n, format_chain(c))
            for n in range(nmin, nmax + 1)
            for c in enumerate_subchains(n)
        ]
        if not (resume and self.db):
            return jobs, 0
        todo = [(n, chain) for n, chain in jobs if not self.db.chain_passed(n, chain)]
        return todo, len(jobs) - len(todo)

    def verify_all(self, nmax: int, nmin: int = 3, resume: bool = True) -> VerifySummary:
        """
        Check every admissible subchain with nmin <= n <= nmax.

        Raises:
            InvalidInputError: the range is empty or exceeds the size cap
        """
        if nmin < 2 or nmin > nmax:
            raise InvalidInputError(f"Need 2 <= nmin <= nmax, got nmin={nmin}, nmax={nmax}")
        limit = configured_max_n()
        if nmax > limit:
            raise InvalidInputError(f"nmax={nmax} exceeds the size cap {limit}")

        jobs, skipped = self._pending(nmin, nmax, resume)
        total = len(jobs)
        summary = VerifySummary(nmin=nmin, nmax=nmax, skipped=skipped)
        if skipped:
            logger.info(f"Skipping {skipped} subchains that already passed")

        run = None
        if self.db:
            run = self.db.create_run(nmin, nmax, chains_total=total + skipped)
            summary.run_id = run.id
            logger.info(f"Created verification run #{run.id}")

        logger.info(f"Checking {total} subchains for n={nmin}..{nmax} with {self.num_workers} workers...")

        done = 0
        buffer: list[ChainResult] = []

        def record(result: ChainResult) -> None:
            nonlocal done
            done += 1
            summary.results.append(result)
            if run:
                result.run_id = run.id
                buffer.append(result)
                if len(buffer) >= BULK_INSERT_SIZE:
                    self.db.add_chain_results_bulk(buffer)
                    buffer.clear()
            if self.progress_callback:
                self.progress_callback(done, total, f"n={result.n} {result.chain}")

        def flush(status: RunStatus) -> None:
            if not run:
                return
            if buffer:
                self.db.add_chain_results_bulk(buffer)
                buffer.clear()
            self.db.update_run_status(
                run.id, status,
                chains_done=done + skipped,
                mismatches=len(summary.failures),
            )

        try:
            if self.num_workers == 1:
                for n, chain in jobs:
                    record(verify_chain(n, chain, self.seed_cap))
            else:
                with ProcessPoolExecutor(max_workers=self.num_workers) as executor:
                    future_to_job = {
                        executor.submit(verify_chain, n, chain, self.seed_cap): (n, chain)
                        for n, chain in jobs
                    }
                    for future in as_completed(future_to_job):
                        record(future.result())

        except KeyboardInterrupt:
            flush(RunStatus.INTERRUPTED)
            logger.info("Verification interrupted, progress saved")
            raise

        except Exception as e:
            logger.error(f"Verification failed: {e}")
            flush(RunStatus.FAILED)
            raise

        summary.results.sort(key=lambda r: (r.n, r.chain))
        flush(RunStatus.COMPLETED if summary.ok else RunStatus.MISMATCH)

        if summary.ok:
            logger.info(f"Verification complete: {done} subchains agree")
        else:
            logger.warning(f"Verification found {len(summary.failures)} disagreeing subchains")
        return summary


def verify_all(
    nmax: int,
    nmin: int = 3,
    num_workers: Optional[int] = None,
    seed_cap: Optional[int] = None,
) -> VerifySummary:
    """In-memory harness run, no ledger."""
    return BijectionVerifier(num_workers=num_workers, seed_cap=seed_cap).verify_all(nmax, nmin)
