import enum
import json
from typing import Any

from . import utils
from .models import Outcome, RunConfig, SuiteReport


class Type(str, enum.Enum):
    RECORD = "record"
    FAILURE = "failure"
    SUMMARY = "summary"
    ERROR = "error"


def build_message(message_type: Type, data: dict[str, Any]) -> str:
    body = utils.to_jsonable(data)
    return json.dumps({"type": message_type.value, **body}, sort_keys=True)


def build_record(command: str, config: RunConfig, data: dict[str, Any]) -> str:
    return build_message(Type.RECORD, {"command": command, "config": config.dict(), **data})


def build_failure(suite: str, outcome: Outcome) -> str:
    return build_message(Type.FAILURE, {"suite": suite, **outcome.dict()})


def build_summary(report: SuiteReport) -> str:
    return build_message(
        Type.SUMMARY,
        {
            "suite": report.suite.value,
            "config": report.config.dict(),
            "instances": report.instances,
            "skipped": report.skipped,
            "failures": len(report.failures),
            "max_deviation": report.max_deviation,
            "passed": report.passed,
        },
    )


def build_error(command: str, error: BaseException) -> str:
    return build_message(Type.ERROR, {"command": command, "error": type(error).__name__, "message": str(error)})
