"""
Core Module

Contains the application orchestration and the verification runner.
"""

from .application import ReductionApp
from .verification import VerificationRunner

__all__ = ['ReductionApp', 'VerificationRunner']
