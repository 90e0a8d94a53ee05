"""
Hall set generation and β table command handlers
"""

import logging
from typing import Any, Dict

from ..bounds import beta_table
from ..data_models import ResponseMessage
from ..hall import HallSet, generate
from ..order import HallOrderSpec
from ..utils.error_handling import handle_kernel_error
from ..utils.serialization import beta_to_csv, beta_to_json, dumps, hall_to_json

logger = logging.getLogger("GenHandler")

X0, X1 = 0, 1


def _spec(params: Dict[str, Any]) -> HallOrderSpec:
    return HallOrderSpec.parse(params["order"], params.get("alphabet"))


def _hall_text(hall_set: HallSet, r_cap: int) -> str:
    lines = [f"{hall_set.spec.name} over {hall_set.spec.alphabet_size} letters, max length {hall_set.max_len}"]
    for n in range(1, hall_set.max_len + 1):
        elems = hall_set.by_length[n]
        lines.append(f"{n:>3} ({len(elems)}): " + " ".join(hall_set.format(t) for t in elems))
    if hall_set.max_len >= 2:
        lines.append(f"r(X0,X1) = {hall_set.r_factor(X0, X1, r_cap)}")
    return "\n".join(lines)


def _hall_csv(hall_set: HallSet) -> str:
    rows = ["length,index,element"]
    for n in range(1, hall_set.max_len + 1):
        rows.extend(f"{n},{i},\"{hall_set.format(t)}\"" for i, t in enumerate(hall_set.by_length[n]))
    return "\n".join(rows) + "\n"


class GenHandler:
    """Handler for Hall set generation"""

    @staticmethod
    def generate(params: Dict[str, Any]) -> ResponseMessage:
        """Generate and export a Hall set"""
        try:
            hall_set = generate(_spec(params), params["max_len"])
            fmt = params.get("fmt", "json")
            if fmt == "text":
                output = _hall_text(hall_set, params.get("r_cap", 8))
            elif fmt == "csv":
                output = _hall_csv(hall_set)
            else:
                output = dumps(hall_to_json(hall_set))
            return ResponseMessage(
                success=True,
                message=f"Generated {len(hall_set)} elements of the {hall_set.spec.name} set",
                data={
                    "order": hall_set.spec.name,
                    "alphabet": hall_set.spec.alphabet_size,
                    "count": len(hall_set),
                    "counts": [len(hall_set.by_length[n]) for n in range(1, hall_set.max_len + 1)],
                    "output": output,
                }
            )
        except Exception as e:
            return handle_kernel_error(e, "gen", {"order": params.get("order")})


class BetaHandler:
    """Handler for β tables"""

    @staticmethod
    def beta(params: Dict[str, Any]) -> ResponseMessage:
        """β_n for 2 <= n <= max_n next to the known closed forms"""
        try:
            max_n = params["max_n"]
            hall_set = generate(_spec(params), max_n)
            rows = beta_table(hall_set, max_n)
            output = dumps(beta_to_json(rows)) if params.get("fmt") == "json" else beta_to_csv(rows)
            mismatches = [r.n for r in rows if r.match is False]
            if mismatches:
                logger.warning(f"β differs from its closed form at n = {mismatches}")
            return ResponseMessage(
                success=True,
                data={
                    "order": hall_set.spec.name,
                    "rows": len(rows),
                    "mismatches": mismatches,
                    "output": output,
                }
            )
        except Exception as e:
            return handle_kernel_error(e, "beta", {"order": params.get("order")})
