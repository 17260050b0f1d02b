"""
Records and schema for the verification ledger.
"""

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Optional


class ChainStatus(str, Enum):
    """Outcome of checking one subchain."""
    PENDING = "pending"      # Queued, not yet checked
    EQUAL = "equal"          # Both engines agree
    MISMATCH = "mismatch"    # Variable sets differ
    FAILED = "failed"        # Raised before a verdict


class RunStatus(str, Enum):
    """Status of a verification run."""
    RUNNING = "running"          # Workers still reporting
    COMPLETED = "completed"      # Every subchain agreed
    MISMATCH = "mismatch"        # At least one subchain disagreed or failed
    INTERRUPTED = "interrupted"  # Stopped early, resumable
    FAILED = "failed"            # Aborted by an unexpected error, resumable


@dataclass
class ChainResult:
    """Verdict for one subchain within a run."""
    id: Optional[int]
    run_id: Optional[int]
    n: int
    chain: str
    status: ChainStatus
    dyck_count: int = 0
    mutation_count: int = 0
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    error_message: Optional[str] = None
    checked_at: Optional[datetime] = None

    @property
    def passed(self) -> bool:
        return self.status == ChainStatus.EQUAL

    def to_json(self) -> dict:
        return {
            "subchain": self.chain,
            "n": self.n,
            "status": self.status.value,
            "dyck_count": self.dyck_count,
            "mutation_count": self.mutation_count,
            "equal": self.passed,
            "missing": self.missing,
            "extra": self.extra,
            "error": self.error_message,
        }


@dataclass
class VerifyRun:
    """One invocation of the exhaustive harness."""
    id: Optional[int]
    nmin: int
    nmax: int
    status: RunStatus
    chains_total: int
    chains_done: int
    mismatches: int
    started_at: datetime
    completed_at: Optional[datetime]


# SQL Schema
SCHEMA_SQL = """
-- One row per harness invocation
CREATE TABLE IF NOT EXISTS verify_runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    nmin INTEGER NOT NULL,
    nmax INTEGER NOT NULL,
    status TEXT NOT NULL DEFAULT 'running',
    chains_total INTEGER DEFAULT 0,
    chains_done INTEGER DEFAULT 0,
    mismatches INTEGER DEFAULT 0,
    started_at TIMESTAMP NOT NULL,
    completed_at TIMESTAMP
);

-- Per-subchain verdicts; missing/extra hold JSON arrays of canonical strings
CREATE TABLE IF NOT EXISTS chain_results (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    run_id INTEGER NOT NULL,
    n INTEGER NOT NULL,
    chain TEXT NOT NULL,
    status TEXT NOT NULL DEFAULT 'pending',
    dyck_count INTEGER DEFAULT 0,
    mutation_count INTEGER DEFAULT 0,
    missing TEXT NOT NULL DEFAULT '[]',
    extra TEXT NOT NULL DEFAULT '[]',
    error_message TEXT,
    checked_at TIMESTAMP NOT NULL,
    FOREIGN KEY (run_id) REFERENCES verify_runs(id)
);

CREATE INDEX IF NOT EXISTS idx_chain_results_run_id ON chain_results(run_id);
CREATE INDEX IF NOT EXISTS idx_chain_results_chain ON chain_results(n, chain);
CREATE INDEX IF NOT EXISTS idx_chain_results_status ON chain_results(status);
"""
