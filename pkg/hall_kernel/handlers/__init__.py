"""
Command handlers for the Hall kernel CLI
"""

from .hall_handler import GenHandler, BetaHandler
from .decompose_handler import DecomposeHandler
from .verify_handler import VerifyHandler
from .family_handler import FamilyHandler

__all__ = ['GenHandler', 'BetaHandler', 'DecomposeHandler', 'VerifyHandler', 'FamilyHandler']
