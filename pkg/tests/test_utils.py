import json
from fractions import Fraction

from mpmath import mp

from reggelab import messages, utils
from reggelab.exact import SignedSqrtRational


def test_to_jsonable_drops_missing_entries():
    data = {"kept": Fraction(1, 2), "missing": None, "nested": {"z": mp.mpc(1, 2), "gone": None}, "items": [None, 1]}
    assert utils.to_jsonable(data) == {"kept": "1/2", "nested": {"z": [1.0, 2.0]}, "items": [None, 1]}


def test_to_jsonable_exact_values():
    assert utils.to_jsonable(SignedSqrtRational(-1, Fraction(2, 3))) == {"sign": -1, "square_num": 2, "square_den": 3}


def test_timer_records_elapsed_time(caplog):
    with caplog.at_level("INFO"), utils.Timer("sweep") as timer:
        pass
    assert timer.elapsed >= 0
    assert "sweep took" in caplog.text


def test_error_message():
    line = messages.build_error("verify", ZeroDivisionError("division by zero"))
    assert json.loads(line) == {
        "type": "error",
        "command": "verify",
        "error": "ZeroDivisionError",
        "message": "division by zero",
    }
