"""
Equality family command handler
"""

import inspect
from typing import Any, Dict

from ..data_models import ResponseMessage
from ..families import FAMILIES, ORDER_FAMILIES, FamilyResult, run_family
from ..utils.error_handling import ErrorCategory, create_error_response, handle_kernel_error
from ..utils.serialization import dumps


def _result_json(result: FamilyResult) -> Dict[str, Any]:
    inst = result.instance
    hs = inst.hall_set
    return {
        "family": inst.name,
        "params": inst.params,
        "order": hs.spec.name,
        "a": hs.format(inst.a),
        "b": hs.format(inst.b),
        "norm": str(result.norm),
        "expected": str(inst.expected_norm),
        "exact": inst.exact,
        "upperBound": None if inst.upper_bound is None else str(inst.upper_bound),
        "closedForm": None if inst.closed_form is None else str(inst.closed_form),
        "theta": result.theta,
        "expectedTheta": inst.expected_theta,
        "oracle": result.oracle_verified,
        "checks": inst.checks,
        "status": "PASS" if result.passed else "FAIL",
    }


def _result_text(result: FamilyResult) -> str:
    inst = result.instance
    relation = "=" if inst.exact else ">="
    status = "PASS" if result.passed else "FAIL"
    args = ", ".join(f"{k}={v}" for k, v in inst.params.items())
    return (f"{status} {inst.name}({args}) on {inst.hall_set.spec.name}: "
            f"norm {result.norm}, expected {relation} {inst.expected_norm}")


class FamilyHandler:
    """Handler for family"""

    @staticmethod
    def family(params: Dict[str, Any]) -> ResponseMessage:
        """Instantiate a family, decompose it and compare with its known norm"""
        try:
            name = params["family"]
            if name not in FAMILIES:
                return create_error_response(
                    "UNKNOWN_FAMILY",
                    f"Family '{name}' not found",
                    f"Available families: {', '.join(FAMILIES)}",
                    ErrorCategory.VALIDATION
                )
            args = dict(params.get("params", {}))
            if name in ORDER_FAMILIES and params.get("order"):
                args["order"] = params["order"]
            try:
                inspect.signature(FAMILIES[name]).bind(**args)
            except TypeError as e:
                return create_error_response("INVALID_FAMILY_PARAMS", str(e), f"family {name}",
                                             ErrorCategory.VALIDATION)
            result = run_family(FAMILIES[name](**args))

            output = _result_text(result) if params.get("fmt") == "text" else dumps(_result_json(result))
            data = {"family": name, "norm": result.norm, "expected": result.instance.expected_norm,
                    "output": output}
            if not result.passed:
                return ResponseMessage(
                    success=False,
                    error=f"VERIFICATION_FAILED: {_result_text(result)}",
                    data={"error_code": "VERIFICATION_FAILED",
                          "category": ErrorCategory.VERIFICATION.value, **data}
                )
            return ResponseMessage(success=True, data=data)
        except Exception as e:
            return handle_kernel_error(e, "family", {"family": params.get("family")})
