from __future__ import annotations

import pytest

from localperiods import ledger
from localperiods.ledger import repository


@pytest.fixture
def run_ledger(tmp_path):
    previous = ledger.current_path()
    ledger.configure(tmp_path / "ledger.db")
    ledger.set_enabled(True)
    yield ledger
    ledger.close_connection()
    ledger.configure(previous)
    ledger.set_enabled(True)


def _record(case: str = "U-INERT p=3", passed: bool = True, error=None):
    return {"case": case, "kind": "oracle-P", "pass": passed, "error": error, "relErr": 1e-9, "wallTime": 0.25}


def test_record_run_and_checks(run_ledger):
    run_id = run_ledger.record_run("verify", seed=7, metadata={"name": "default"})
    assert run_id is not None
    first = run_ledger.record_check(run_id, _record())
    second = run_ledger.record_check(run_id, _record("R5-JOINT p=3 c=1", passed=False, error="PoleError: pole"))
    assert first < second
    items = run_ledger.query_checks(run_id=run_id)
    assert [item["id"] for item in items] == [second, first]
    assert items[0]["status"] == "error"
    assert items[0]["message"] == "PoleError: pole"
    assert items[1]["details"]["case"] == "U-INERT p=3"
    assert items[1]["wall_time"] == 0.25


def test_filters_and_counts(run_ledger):
    run_id = run_ledger.record_run("verify")
    run_ledger.record_check(run_id, _record())
    run_ledger.record_check(run_id, _record(passed=False))
    run_ledger.record_check(run_id, _record("R2-SPECIAL p=3"))
    assert run_ledger.count_checks() == 3
    assert run_ledger.count_checks(status="FAIL") == 1
    assert run_ledger.count_checks(case_tag="R2-SPECIAL p=3") == 1
    assert len(run_ledger.query_checks(limit=2)) == 2
    assert run_ledger.query_checks(limit=2, offset=2)[0]["case_tag"] == "U-INERT p=3"


def test_finish_run_updates_status(run_ledger):
    run_id = run_ledger.record_run("probe")
    assert run_ledger.get_run(run_id)["status"] == "running"
    assert run_ledger.finish_run(run_id, "SUCCESS", "1/1 checks passed", {"total": 1})
    run = run_ledger.get_run(run_id)
    assert run["status"] == "success"
    assert run["details"] == {"total": 1}
    assert run["finished_at"] is not None


def test_delete_runs_cascades_to_checks(run_ledger):
    for _ in range(2):
        run_id = run_ledger.record_run("verify")
        run_ledger.record_check(run_id, _record())
    assert run_ledger.delete_runs() == 2
    assert run_ledger.count_checks() == 0
    assert run_ledger.query_runs() == []


def test_disabled_ledger_records_nothing(run_ledger):
    run_ledger.set_enabled(False)
    assert not run_ledger.is_enabled()
    assert run_ledger.record_run("verify") is None
    assert run_ledger.record_check(1, _record()) is None
    assert not run_ledger.finish_run(1, "success")
    run_ledger.set_enabled(True)
    assert run_ledger.count_checks() == 0


def test_record_run_requires_a_command(run_ledger):
    with pytest.raises(ValueError):
        run_ledger.record_run("")


def test_unserializable_metadata_is_stringified(run_ledger):
    run_id = run_ledger.record_run("verify", metadata={"value": object()})
    assert "object" in run_ledger.get_run(run_id)["details"]["value"]


def test_database_failures_are_swallowed(run_ledger, monkeypatch, capsys):
    def broken(payload):
        raise RuntimeError("disk full")

    monkeypatch.setattr(repository, "insert_run", broken)
    assert run_ledger.record_run("verify") is None
    assert "[run-ledger]" in capsys.readouterr().err
