"""
Utility modules for the Hall kernel
"""

from .validation import validate_command, validate_params
from .error_handling import KernelError, handle_kernel_error, exit_code_for

__all__ = ['validate_command', 'validate_params', 'KernelError', 'handle_kernel_error', 'exit_code_for']
