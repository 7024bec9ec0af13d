"""
Job runner for independent units of work.

Fit restarts, cross-validation folds, network samples and benchmark
replicas are independent jobs. The runner executes them on worker
threads, capped at ``threads`` concurrent jobs, and hands back one
outcome per job in submission order, so results never depend on how
the jobs were scheduled.
"""

from typing import Any, Callable, List, Optional, Sequence, Tuple, TypeVar
from enum import Enum
from datetime import datetime, timezone
from pydantic import BaseModel, ConfigDict
import structlog
import asyncio


logger = structlog.get_logger(__name__)

T = TypeVar("T")


class JobStatus(str, Enum):
    """Status of a job"""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class Job(BaseModel):
    """Bookkeeping record of one job"""
    id: str
    status: JobStatus = JobStatus.PENDING
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    error: Optional[str] = None

    @property
    def execution_time_ms(self) -> float:
        if self.started_at is None or self.completed_at is None:
            return 0.0
        return (self.completed_at - self.started_at).total_seconds() * 1000


class JobOutcome(BaseModel):
    """Result or exception of one job"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    job: Job
    result: Optional[Any] = None
    exception: Optional[BaseException] = None

    @property
    def ok(self) -> bool:
        return self.job.status == JobStatus.COMPLETED


class JobRunner:
    """
    Runs callables concurrently with a worker cap.

    ``threads=1`` runs every job in the calling thread, in order.
    """

    def __init__(self, threads: int = 1, name: str = "jobs"):
        if threads < 1:
            raise ValueError(f"threads must be >= 1, got {threads}")
        self.threads = threads
        self.name = name
        self.logger = structlog.get_logger("JobRunner").bind(runner=name)

    def run(self, jobs: Sequence[Tuple[str, Callable[[], T]]]) -> List[JobOutcome]:
        """
        Execute ``(job_id, callable)`` pairs.

        Exceptions raised by a job are captured in its outcome; the
        caller decides whether a failed job is fatal.
        """
        records = [Job(id=job_id) for job_id, _ in jobs]
        self.logger.debug("jobs_submitted", total_jobs=len(records), threads=self.threads)

        if self.threads == 1 or len(jobs) <= 1:
            outcomes = [
                self._execute(record, func)
                for record, (_, func) in zip(records, jobs)
            ]
        else:
            outcomes = asyncio.run(self._gather(records, jobs))

        failed = sum(1 for outcome in outcomes if not outcome.ok)
        self.logger.debug(
            "jobs_finished",
            total_jobs=len(outcomes),
            failed_jobs=failed,
        )
        return outcomes

    async def _gather(
        self,
        records: List[Job],
        jobs: Sequence[Tuple[str, Callable[[], T]]]
    ) -> List[JobOutcome]:
        semaphore = asyncio.Semaphore(self.threads)

        async def guarded(record: Job, func: Callable[[], T]) -> JobOutcome:
            async with semaphore:
                return await asyncio.to_thread(self._execute, record, func)

        return list(await asyncio.gather(
            *(guarded(record, func) for record, (_, func) in zip(records, jobs))
        ))

    def _execute(self, record: Job, func: Callable[[], T]) -> JobOutcome:
        record.status = JobStatus.RUNNING
        record.started_at = datetime.now(timezone.utc)
        try:
            result = func()
        except Exception as e:
            record.status = JobStatus.FAILED
            record.error = str(e)
            record.completed_at = datetime.now(timezone.utc)
            self.logger.warning("job_failed", job_id=record.id, error=str(e))
            return JobOutcome(job=record, exception=e)

        record.status = JobStatus.COMPLETED
        record.completed_at = datetime.now(timezone.utc)
        self.logger.debug(
            "job_completed",
            job_id=record.id,
            execution_time_ms=record.execution_time_ms,
        )
        return JobOutcome(job=record, result=result)


def raise_first_failure(outcomes: Sequence[JobOutcome]) -> List[Any]:
    """Unwrap results, re-raising the first captured exception."""
    for outcome in outcomes:
        if not outcome.ok:
            raise outcome.exception
    return [outcome.result for outcome in outcomes]
