"""
Verification suite command handler
"""

import logging
from dataclasses import fields
from typing import Any, Dict

from ..data_models import ResponseMessage
from ..suites import SuiteLimits, run_suites
from ..utils.error_handling import ErrorCategory, handle_kernel_error
from ..utils.serialization import dumps, suite_report_to_json, suite_report_to_text

logger = logging.getLogger("VerifyHandler")


def suite_limits(params: Dict[str, Any]) -> SuiteLimits:
    known = {f.name for f in fields(SuiteLimits)}
    values = {k: v for k, v in params.get("limits", {}).items() if k in known}
    if params.get("jobs") is not None:
        values["jobs"] = params["jobs"]
    if params.get("budget") is not None:
        values["budget_k2"] = params["budget"]
        values["structure_budget"] = min(params["budget"], values.get("structure_budget", params["budget"]))
    return SuiteLimits(**values)


class VerifyHandler:
    """Handler for verify"""

    @staticmethod
    def verify(params: Dict[str, Any]) -> ResponseMessage:
        """Run a named suite; any failed check fails the command"""
        try:
            suite = params.get("suite", "all")
            reports = run_suites(suite, suite_limits(params))
            if params.get("fmt") == "text":
                output = "\n".join(suite_report_to_text(r) for r in reports)
            else:
                output = dumps([suite_report_to_json(r) for r in reports])
            failed = [c.name for r in reports for c in r.failures]
            summary = {
                "suite": suite,
                "checks": sum(len(r.checks) for r in reports),
                "failed": failed,
                "output": output,
            }
            if failed:
                return ResponseMessage(
                    success=False,
                    error=f"VERIFICATION_FAILED: {len(failed)} checks failed in suite {suite}",
                    data={"error_code": "VERIFICATION_FAILED",
                          "category": ErrorCategory.VERIFICATION.value, **summary}
                )
            return ResponseMessage(success=True, message=f"suite {suite} passed", data=summary)
        except Exception as e:
            return handle_kernel_error(e, "verify", {"suite": params.get("suite")})
