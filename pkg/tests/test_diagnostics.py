import pytest
from structlog.testing import CapturingLogger

from dirac import diagnostics
from dirac.diagnostics import OperationLog, PerformanceMetrics, get_operation_log, track_operation


@pytest.fixture(autouse=True)
def clean_log(monkeypatch):
    capture = CapturingLogger()
    monkeypatch.setattr(diagnostics, "logger", capture)
    get_operation_log().clear()
    yield capture
    get_operation_log().clear()


def test_successful_operation_is_recorded(clean_log):
    with track_operation("spectrum", family="scarf"):
        pass
    (entry,) = get_operation_log().entries()
    assert entry.operation == "spectrum"
    assert entry.success
    assert entry.duration >= 0
    assert entry.memory_usage > 0
    assert [call.method_name for call in clean_log.calls] == ["debug", "info"]
    assert clean_log.calls[-1].kwargs["family"] == "scarf"


def test_failed_operation_is_recorded_and_reraised(clean_log):
    with pytest.raises(ValueError, match="boom"):
        with track_operation("verify"):
            raise ValueError("boom")
    (entry,) = get_operation_log().entries()
    assert not entry.success
    assert entry.error_message == "boom"
    assert clean_log.calls[-1].args[0] == "operation_failed"


def test_summary_aggregates_by_operation():
    with track_operation("sweep"):
        pass
    with track_operation("sweep"):
        pass
    with pytest.raises(RuntimeError):
        with track_operation("verify"):
            raise RuntimeError
    summary = get_operation_log().summary()
    assert summary["total_operations"] == 3
    assert summary["failed_operations"] == 1
    assert summary["operations"]["sweep"]["count"] == 2
    assert summary["peak_memory_mb"] > 0


def test_empty_summary():
    assert OperationLog().summary() == {"total_operations": 0}


def test_log_is_bounded():
    log = OperationLog(maxlen=2)
    for name in ("a", "b", "c"):
        log.record(PerformanceMetrics.create(name, 0.0, 1.0, True))
    assert [m.operation for m in log.entries()] == ["b", "c"]
    assert log.entries()[0].duration == 1.0
