import pytest

from dyck_cluster.database import Database
from dyck_cluster.models import ChainResult, ChainStatus, RunStatus


@pytest.fixture
def db(tmp_path):
    return Database(tmp_path / "ledger.db")


def result(run_id, n, chain, status=ChainStatus.EQUAL, **kwargs):
    return ChainResult(id=None, run_id=run_id, n=n, chain=chain, status=status, **kwargs)


class TestRuns:
    def test_create_and_get(self, db):
        run = db.create_run(3, 5, chains_total=14)
        assert run.id is not None
        assert run.status == RunStatus.RUNNING
        assert (run.nmin, run.nmax, run.chains_total, run.chains_done) == (3, 5, 14, 0)
        assert run.completed_at is None
        assert db.get_run(run.id) == run

    def test_missing_run(self, db):
        assert db.get_run(42) is None
        assert db.get_latest_run() is None

    def test_list_newest_first(self, db):
        ids = [db.create_run(3, n).id for n in (3, 4, 5)]
        assert [r.id for r in db.list_runs()] == ids[::-1]
        assert [r.id for r in db.list_runs(limit=2)] == ids[:0:-1]
        assert db.get_latest_run().id == ids[-1]

    def test_update_status(self, db):
        run = db.create_run(3, 4)
        db.update_run_status(run.id, RunStatus.INTERRUPTED, chains_done=3, started_at="ignored")
        stored = db.get_run(run.id)
        assert stored.status == RunStatus.INTERRUPTED
        assert stored.chains_done == 3
        assert stored.completed_at is None

        db.update_run_status(run.id, RunStatus.MISMATCH, chains_done=6, mismatches=1)
        stored = db.get_run(run.id)
        assert stored.status == RunStatus.MISMATCH
        assert stored.mismatches == 1
        assert stored.completed_at is not None


class TestChainResults:
    def test_bulk_insert_and_read_back(self, db):
        run = db.create_run(3, 4)
        db.add_chain_results_bulk([
            result(run.id, 4, "j1,j3", ChainStatus.MISMATCH, missing=["x1"], extra=["x2", "x3"]),
            result(run.id, 3, "j1,i2", dyck_count=3, mutation_count=3),
            result(run.id, 4, "i1,j2,i3", ChainStatus.FAILED, error_message="SizeLimitError: cap"),
        ])
        rows = db.get_chain_results(run.id)
        assert [(r.n, r.chain) for r in rows] == [(3, "j1,i2"), (4, "i1,j2,i3"), (4, "j1,j3")]
        assert rows[0].passed and rows[0].dyck_count == 3
        assert rows[1].error_message == "SizeLimitError: cap"
        assert rows[2].missing == ["x1"]
        assert rows[2].extra == ["x2", "x3"]
        assert all(r.checked_at is not None for r in rows)

    def test_stats(self, db):
        run = db.create_run(3, 4)
        assert db.get_run_stats(run.id) == {
            "total": 0, "equal": 0, "mismatch": 0, "failed": 0, "variables": 0,
        }
        db.add_chain_results_bulk([
            result(run.id, 3, "j1,i2", dyck_count=3),
            result(run.id, 3, "i1,j2", dyck_count=3),
            result(run.id, 4, "j1,j3", ChainStatus.MISMATCH, dyck_count=6),
        ])
        assert db.get_run_stats(run.id) == {
            "total": 3, "equal": 2, "mismatch": 1, "failed": 0, "variables": 12,
        }

    def test_chain_passed_spans_runs(self, db):
        first = db.create_run(3, 3)
        db.add_chain_results_bulk([
            result(first.id, 3, "j1,i2"),
            result(first.id, 3, "i1,j2", ChainStatus.MISMATCH),
        ])
        db.create_run(3, 3)
        assert db.chain_passed(3, "j1,i2")
        assert not db.chain_passed(3, "i1,j2")
        assert not db.chain_passed(4, "j1,i2")

    def test_json(self):
        data = result(1, 3, "j1,i2", dyck_count=3, mutation_count=3).to_json()
        assert data == {
            "subchain": "j1,i2", "n": 3, "status": "equal", "dyck_count": 3,
            "mutation_count": 3, "equal": True, "missing": [], "extra": [], "error": None,
        }
