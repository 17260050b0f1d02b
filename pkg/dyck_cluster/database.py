"""
SQLite ledger for verification runs.
"""

import json
import sqlite3
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Generator, List, Optional

from .models import ChainResult, ChainStatus, RunStatus, SCHEMA_SQL, VerifyRun

DEFAULT_DB_PATH = "dyck_cluster.db"


class Database:
    """SQLite store for verification runs and per-subchain verdicts."""

    def __init__(self, db_path: str | Path = DEFAULT_DB_PATH):
        self.db_path = Path(db_path)
        self._init_db()

    def _init_db(self):
        with self._get_connection() as conn:
            conn.executescript(SCHEMA_SQL)

    @contextmanager
    def _get_connection(self) -> Generator[sqlite3.Connection, None, None]:
        """Get a database connection with row factory."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        try:
            yield conn
            conn.commit()
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    # -------------------------------------------------------------------------
    # Run Operations
    # -------------------------------------------------------------------------

    def create_run(self, nmin: int, nmax: int, chains_total: int = 0) -> VerifyRun:
        with self._get_connection() as conn:
            cursor = conn.execute(
                """
                INSERT INTO verify_runs (nmin, nmax, status, chains_total, started_at)
                VALUES (?, ?, ?, ?, ?)
                """,
                (nmin, nmax, RunStatus.RUNNING.value, chains_total, datetime.now())
            )
            run_id = cursor.lastrowid

        return self.get_run(run_id)

    def get_run(self, run_id: int) -> Optional[VerifyRun]:
        with self._get_connection() as conn:
            row = conn.execute(
                "SELECT * FROM verify_runs WHERE id = ?", (run_id,)
            ).fetchone()

        if not row:
            return None

        return self._row_to_run(row)

    def get_latest_run(self) -> Optional[VerifyRun]:
        with self._get_connection() as conn:
            row = conn.execute(
                "SELECT * FROM verify_runs ORDER BY id DESC LIMIT 1"
            ).fetchone()

        if not row:
            return None

        return self._row_to_run(row)

    def list_runs(self, limit: int = 10) -> List[VerifyRun]:
        """List recent runs, newest first."""
        with self._get_connection() as conn:
            rows = conn.execute(
                "SELECT * FROM verify_runs ORDER BY id DESC LIMIT ?", (limit,)
            ).fetchall()

        return [self._row_to_run(row) for row in rows]

    def update_run_status(self, run_id: int, status: RunStatus, **kwargs):
        """Update run status and any of the counter fields."""
        fields = ["status = ?"]
        values = [status.value]

        if status in (RunStatus.COMPLETED, RunStatus.MISMATCH, RunStatus.FAILED):
            fields.append("completed_at = ?")
            values.append(datetime.now())

        for key, value in kwargs.items():
            if key in ('chains_total', 'chains_done', 'mismatches'):
                fields.append(f"{key} = ?")
                values.append(value)

        values.append(run_id)

        with self._get_connection() as conn:
            conn.execute(
                f"UPDATE verify_runs SET {', '.join(fields)} WHERE id = ?",
                values
            )

    def get_run_stats(self, run_id: int) -> dict:
        with self._get_connection() as conn:
            row = conn.execute(
                """
                SELECT
                    COUNT(*) as total,
                    SUM(CASE WHEN status = 'equal' THEN 1 ELSE 0 END) as equal,
                    SUM(CASE WHEN status = 'mismatch' THEN 1 ELSE 0 END) as mismatch,
                    SUM(CASE WHEN status = 'failed' THEN 1 ELSE 0 END) as failed,
                    SUM(dyck_count) as variables
                FROM chain_results WHERE run_id = ?
                """,
                (run_id,)
            ).fetchone()

        return {key: (row[key] or 0) for key in row.keys()}

    def _row_to_run(self, row: sqlite3.Row) -> VerifyRun:
        return VerifyRun(
            id=row['id'],
            nmin=row['nmin'],
            nmax=row['nmax'],
            status=RunStatus(row['status']),
            chains_total=row['chains_total'],
            chains_done=row['chains_done'],
            mismatches=row['mismatches'],
            started_at=self._parse_datetime(row['started_at']),
            completed_at=self._parse_datetime(row['completed_at']),
        )

    # -------------------------------------------------------------------------
    # Chain Result Operations
    # -------------------------------------------------------------------------

    def add_chain_results_bulk(self, results: List[ChainResult]):
        """Add multiple verdicts in a single transaction."""
        now = datetime.now()
        with self._get_connection() as conn:
            conn.executemany(
                """
                INSERT INTO chain_results (
                    run_id, n, chain, status, dyck_count, mutation_count,
                    missing, extra, error_message, checked_at
                ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                """,
                [
                    (
                        r.run_id, r.n, r.chain, r.status.value,
                        r.dyck_count, r.mutation_count,
                        json.dumps(r.missing), json.dumps(r.extra),
                        r.error_message, r.checked_at or now
                    )
                    for r in results
                ]
            )

    def get_chain_results(self, run_id: int) -> List[ChainResult]:
        with self._get_connection() as conn:
            rows = conn.execute(
                "SELECT * FROM chain_results WHERE run_id = ? ORDER BY n, chain",
                (run_id,)
            ).fetchall()

        return [self._row_to_chain(row) for row in rows]

    def chain_passed(self, n: int, chain: str) -> bool:
        """Whether any earlier run recorded agreement for this subchain."""
        with self._get_connection() as conn:
            row = conn.execute(
                "SELECT 1 FROM chain_results WHERE n = ? AND chain = ? AND status = ?",
                (n, chain, ChainStatus.EQUAL.value)
            ).fetchone()
        return row is not None

    def _row_to_chain(self, row: sqlite3.Row) -> ChainResult:
        return ChainResult(
            id=row['id'],
            run_id=row['run_id'],
            n=row['n'],
            chain=row['chain'],
            status=ChainStatus(row['status']),
            dyck_count=row['dyck_count'],
            mutation_count=row['mutation_count'],
            missing=json.loads(row['missing']),
            extra=json.loads(row['extra']),
            error_message=row['error_message'],
            checked_at=self._parse_datetime(row['checked_at']),
        )

    @staticmethod
    def _parse_datetime(value) -> Optional[datetime]:
        if value is None:
            return None
        if isinstance(value, datetime):
            return value
        if isinstance(value, str):
            try:
                return datetime.fromisoformat(value)
            except ValueError:
                return datetime.strptime(value, '%Y-%m-%d %H:%M:%S.%f')
        return None
