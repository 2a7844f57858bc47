"""Pass / fail / inapplicable outcomes of the executable checks."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Sequence

import pandas as pd


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"


@dataclass
class CheckResult:
    check: str
    verdict: Verdict
    detail: str = ""
    data: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    @property
    def failed(self) -> bool:
        return self.verdict == Verdict.FAIL

    def to_dict(self) -> dict:
        return {"check": self.check, "verdict": self.verdict.value, "detail": self.detail,
                "data": {k: _plain(v) for k, v in self.data.items()}}


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)


def inapplicable(check: str, detail: str = "", **data) -> CheckResult:
    return CheckResult(check, Verdict.INAPPLICABLE, detail, data)


def verdict_of(check: str, ok: bool, detail: str = "", **data) -> CheckResult:
    return CheckResult(check, Verdict.PASS if ok else Verdict.FAIL, detail, data)


def results_frame(results: Sequence[CheckResult]) -> pd.DataFrame:
    return pd.DataFrame([{"check": r.check, "verdict": r.verdict.value, "detail": r.detail} for r in results],
                        columns=["check", "verdict", "detail"])


def any_failed(results: Sequence[CheckResult]) -> bool:
    return any(r.failed for r in results)
