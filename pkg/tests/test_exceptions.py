import io
import json

from likelihood_station.exceptions import (
    EXIT_DEGENERATE,
    EXIT_INTERNAL,
    EXIT_TIMEOUT,
    EXIT_TOLERANCE,
    EXIT_USAGE,
    ComputationTimeoutError,
    ConsistencyMismatchError,
    DegenerateDataError,
    ModelFileError,
    PositiveDimensionError,
    ResidualError,
    UnitIdealError,
    UsageError,
    error_payload,
    handle_exception,
)


def test_exit_codes_by_family():
    assert UsageError("bad").exit_code == EXIT_USAGE
    assert PositiveDimensionError(2).exit_code == EXIT_DEGENERATE
    assert isinstance(UnitIdealError(), DegenerateDataError)
    assert ComputationTimeoutError("saturate", 1.0).exit_code == EXIT_TIMEOUT
    assert ResidualError(1e-3, 1e-8).exit_code == EXIT_TOLERANCE
    assert ConsistencyMismatchError(5, 2, 3).exit_code == EXIT_TOLERANCE


def test_to_dict():
    payload = ModelFileError("unexpected key", 4, "m.model").to_dict()
    assert payload["error"] is True
    assert payload["exit_code"] == EXIT_USAGE
    assert payload["error_code"] == "MODEL_FILE"
    assert payload["message"] == "m.model:4: unexpected key"
    assert payload["details"] == {"line": 4, "path": "m.model"}


def test_error_payload_for_unexpected_exception():
    code, payload = error_payload(KeyError("p9"))
    assert code == EXIT_INTERNAL
    assert payload["error_code"] == "INTERNAL_ERROR"
    assert "KeyError" in payload["message"]


def test_handle_exception_json():
    stream = io.StringIO()
    code = handle_exception(PositiveDimensionError(1, "solving"), "json", "critical", stream)
    assert code == EXIT_DEGENERATE
    payload = json.loads(stream.getvalue())
    assert payload["error_code"] == "DEGENERATE_DATA"
    assert payload["details"]["dimension"] == 1


def test_handle_exception_text():
    stream = io.StringIO()
    code = handle_exception(UsageError("--data is required"), "text", "critical", stream)
    assert code == EXIT_USAGE
    assert stream.getvalue() == "error: --data is required\n"
