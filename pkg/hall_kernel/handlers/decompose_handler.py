"""
Bracket decomposition command handler
"""

from typing import Any, Dict, Optional

from ..data_models import ResponseMessage
from ..decomp import decompose, relative_folding
from ..hall import HallSet, generate
from ..magma import Magma, TreeId
from ..order import HallOrderSpec
from ..utils.error_handling import handle_kernel_error
from ..utils.serialization import dumps, series_to_json, series_to_text


def _theta(hall_set: HallSet, a: TreeId, b: TreeId) -> Optional[int]:
    if hall_set.compare(a, b) >= 0:
        return None
    return relative_folding(hall_set, a, b).theta


class DecomposeHandler:
    """Handler for decompose"""

    @staticmethod
    def decompose(params: Dict[str, Any]) -> ResponseMessage:
        try:
            spec = HallOrderSpec.parse(params["order"], params.get("alphabet"))
            max_len = params.get("max_len")
            if max_len is None:
                scratch = Magma(spec.alphabet_size)
                max_len = sum(scratch.length(scratch.parse_tree(params[k])) for k in ("a", "b"))
            # membership is decided from the axioms, so long brackets cost no enumeration
            hall_set = generate(spec, max_len, lazy=True)
            m = hall_set.magma
            a, b = m.parse_tree(params["a"]), m.parse_tree(params["b"])

            series, stats = decompose(hall_set, a, b, collect_stats=bool(params.get("stats")))
            theta = _theta(hall_set, a, b)
            max_depth = stats.max_call_depth if stats else None
            if params.get("fmt") == "text":
                output = series_to_text(series)
            else:
                output = dumps(series_to_json(series, a, b, theta, max_depth))
            data = {
                "norm": series.norm,
                "theta": theta,
                "terms": len(series),
                "output": output,
            }
            if stats:
                data["stats"] = {"max_call_depth": stats.max_call_depth,
                                 "cache_hits": stats.cache_hits,
                                 "cache_misses": stats.cache_misses}
            return ResponseMessage(success=True, data=data)
        except Exception as e:
            return handle_kernel_error(e, "decompose", {"a": params.get("a"), "b": params.get("b")})
