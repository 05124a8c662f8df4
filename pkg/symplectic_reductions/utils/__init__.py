"""
Utilities Module

Configuration, result caching and seeded randomness for the toolkit.
"""

from .config_manager import Config, ConfigManager
from .cache import ResultCache
from .rng import SeededRng

__all__ = [
    'Config',
    'ConfigManager',
    'ResultCache',
    'SeededRng'
]
