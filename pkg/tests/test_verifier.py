import pytest

from dyck_cluster import verifier
from dyck_cluster.clusteralg import BijectionReport
from dyck_cluster.database import Database
from dyck_cluster.dyckcore import MAX_N_ENV
from dyck_cluster.errors import InvalidInputError
from dyck_cluster.models import ChainStatus, RunStatus
from dyck_cluster.verifier import BijectionVerifier, verify_all, verify_chain


@pytest.fixture
def db(tmp_path):
    return Database(tmp_path / "ledger.db")


def mismatch_on(chain):
    real = verifier.verify_bijection

    def fake(c, seed_cap=None):
        report = real(c, seed_cap)
        if str(c) == chain:
            return BijectionReport(
                chain=report.chain, n=report.n,
                dyck_count=report.dyck_count, mutation_count=report.mutation_count,
                equal=False, missing=["x9"],
            )
        return report

    return fake


class TestVerifyChain:
    def test_agreement(self):
        result = verify_chain(4, "j1,i2,j3")
        assert result.status == ChainStatus.EQUAL
        assert result.dyck_count == result.mutation_count == 6
        assert result.checked_at is not None

    def test_library_error_becomes_failed(self):
        result = verify_chain(4, "j1,i2,j3", seed_cap=1)
        assert result.status == ChainStatus.FAILED
        assert result.error_message.startswith("SizeLimitError: ")
        assert not result.passed

    def test_bad_chain_becomes_failed(self):
        result = verify_chain(4, "j1,j3")
        assert result.status == ChainStatus.FAILED
        assert result.error_message.startswith("InvalidInputError: ")


class TestVerifyAll:
    def test_in_memory(self):
        summary = verify_all(5, num_workers=1)
        assert summary.ok
        assert len(summary.results) == 2 + 4 + 8
        assert summary.results == sorted(summary.results, key=lambda r: (r.n, r.chain))
        assert summary.run_id is None
        data = summary.to_json()
        assert data["checked"] == 14
        assert data["ok"] is True

    def test_process_pool(self):
        summary = verify_all(4, num_workers=2)
        assert summary.ok
        assert [(r.n, r.chain) for r in summary.results][:2] == [(3, "i1,j2"), (3, "j1,i2")]

    def test_progress_callback(self):
        calls = []
        BijectionVerifier(
            progress_callback=lambda done, total, label: calls.append((done, total, label)),
            num_workers=1,
        ).verify_all(4)
        assert [c[0] for c in calls] == list(range(1, 7))
        assert all(total == 6 for _, total, _ in calls)
        assert calls[0][2].startswith("n=3 ")

    @pytest.mark.parametrize("nmin, nmax", [(1, 4), (5, 4)])
    def test_bad_range(self, nmin, nmax):
        with pytest.raises(InvalidInputError):
            verify_all(nmax, nmin=nmin, num_workers=1)

    def test_size_cap(self, monkeypatch):
        monkeypatch.setenv(MAX_N_ENV, "4")
        with pytest.raises(InvalidInputError):
            verify_all(5, num_workers=1)

    def test_mismatch_reported(self, monkeypatch):
        monkeypatch.setattr(verifier, "verify_bijection", mismatch_on("j1,i2,j3"))
        summary = verify_all(4, num_workers=1)
        assert not summary.ok
        [bad] = summary.failures
        assert (bad.n, bad.chain, bad.missing) == (4, "j1,i2,j3", ["x9"])

    @pytest.mark.slow
    def test_exhaustive_n8(self):
        summary = verify_all(8)
        assert summary.ok
        assert len(summary.results) == sum(2 ** (n - 2) for n in range(3, 9))


class TestLedger:
    def test_records_run(self, db):
        summary = BijectionVerifier(db, num_workers=1).verify_all(4)
        run = db.get_run(summary.run_id)
        assert run.status == RunStatus.COMPLETED
        assert (run.chains_total, run.chains_done, run.mismatches) == (6, 6, 0)
        assert db.get_run_stats(run.id)["equal"] == 6
        assert len(db.get_chain_results(run.id)) == 6

    def test_resume_skips_passed(self, db):
        BijectionVerifier(db, num_workers=1).verify_all(4)
        again = BijectionVerifier(db, num_workers=1).verify_all(5)
        assert again.skipped == 6
        assert len(again.results) == 8
        run = db.get_run(again.run_id)
        assert (run.chains_total, run.chains_done) == (14, 14)

    def test_no_resume_rechecks(self, db):
        BijectionVerifier(db, num_workers=1).verify_all(4)
        again = BijectionVerifier(db, num_workers=1).verify_all(4, resume=False)
        assert again.skipped == 0
        assert len(again.results) == 6

    def test_mismatch_status(self, db, monkeypatch):
        monkeypatch.setattr(verifier, "verify_bijection", mismatch_on("j1,i2"))
        summary = BijectionVerifier(db, num_workers=1).verify_all(3)
        run = db.get_run(summary.run_id)
        assert run.status == RunStatus.MISMATCH
        assert run.mismatches == 1
        assert not db.chain_passed(3, "j1,i2")
        assert db.chain_passed(3, "i1,j2")

    def test_interrupt_saves_progress(self, db, monkeypatch):
        real = verifier.verify_chain
        calls = []

        def flaky(n, chain, seed_cap=None):
            calls.append(chain)
            if len(calls) == 3:
                raise KeyboardInterrupt
            return real(n, chain, seed_cap)

        monkeypatch.setattr(verifier, "verify_chain", flaky)
        with pytest.raises(KeyboardInterrupt):
            BijectionVerifier(db, num_workers=1).verify_all(4)

        run = db.get_latest_run()
        assert run.status == RunStatus.INTERRUPTED
        assert run.chains_done == 2
        assert len(db.get_chain_results(run.id)) == 2

        monkeypatch.setattr(verifier, "verify_chain", real)
        resumed = BijectionVerifier(db, num_workers=1).verify_all(4)
        assert resumed.skipped == 2
        assert len(resumed.results) == 4

    def test_unexpected_error_closes_run(self, db, monkeypatch):
        real = verifier.verify_chain
        calls = []

        def broken(n, chain, seed_cap=None):
            calls.append(chain)
            if len(calls) == 3:
                raise RuntimeError("worker died")
            return real(n, chain, seed_cap)

        monkeypatch.setattr(verifier, "verify_chain", broken)
        with pytest.raises(RuntimeError, match="worker died"):
            BijectionVerifier(db, num_workers=1).verify_all(4)

        run = db.get_latest_run()
        assert run.status == RunStatus.FAILED
        assert run.completed_at is not None
        assert run.chains_done == 2
        assert len(db.get_chain_results(run.id)) == 2

        monkeypatch.setattr(verifier, "verify_chain", real)
        resumed = BijectionVerifier(db, num_workers=1).verify_all(4)
        assert resumed.skipped == 2
        assert db.get_run(resumed.run_id).status == RunStatus.COMPLETED
