"""
Input validation utilities
"""

from typing import Any, Dict, List, Optional

COMMANDS = {'gen', 'decompose', 'beta', 'verify', 'family'}

# orders that only exist over two letters
TWO_LETTER_ORDERS = {"fibo", "supergeom"}


def validate_command(command: str) -> bool:
    """Validate command name"""
    return command in COMMANDS


def validate_size(value: Any, name: str, minimum: int = 1) -> Optional[str]:
    if isinstance(value, bool) or not isinstance(value, int):
        return f"{name} must be an integer"
    if value < minimum:
        return f"{name} must be at least {minimum}, got {value}"
    return None


def validate_bracket_text(text: Any, name: str) -> Optional[str]:
    if not isinstance(text, str) or not text.strip():
        return f"{name} must be a non-empty bracket such as [X0,X1]"
    return None


def _required(params: Dict[str, Any], names: List[str]) -> Optional[str]:
    missing = [n for n in names if params.get(n) is None]
    if missing:
        return f"Missing required parameters: {', '.join(missing)}"
    return None


def validate_order_alphabet(order: str, alphabet: Optional[int]) -> Optional[str]:
    if order in TWO_LETTER_ORDERS and alphabet not in (None, 2):
        return f"order {order} is defined on two letters only, got alphabet {alphabet}"
    if order.startswith("sharp:") and alphabet is not None:
        n = int(order.split(":", 1)[1])
        if alphabet != n + 1:
            return f"order {order} runs over {n + 1} letters, got alphabet {alphabet}"
    return None


def validate_params(command: str, params: Dict[str, Any]) -> Optional[str]:
    """Validate parameters for a specific command. Returns error message or None"""
    if not validate_command(command):
        return f"Unknown command: {command}"

    required = {
        'gen': ['order', 'max_len'],
        'decompose': ['order', 'a', 'b'],
        'beta': ['order', 'max_n'],
        'verify': ['suite'],
        'family': ['family'],
    }.get(command, [])
    error = _required(params, required)
    if error:
        return error

    for name, minimum in (('alphabet', 2), ('max_len', 1), ('max_n', 2), ('budget', 2), ('jobs', 1)):
        if params.get(name) is not None:
            error = validate_size(params[name], name, minimum)
            if error:
                return error

    if params.get('order') is not None:
        error = validate_order_alphabet(params['order'], params.get('alphabet'))
        if error:
            return error

    if command == 'decompose':
        for name in ('a', 'b'):
            error = validate_bracket_text(params[name], name)
            if error:
                return error

    if command == 'family':
        for key, value in params.get('params', {}).items():
            if isinstance(value, bool) or not isinstance(value, int):
                return f"family parameter {key} must be an integer"
    return None
