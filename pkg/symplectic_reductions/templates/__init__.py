"""
Template system initialization.
"""

from .report_template import OutputFormat, ReportRenderer

__all__ = ['OutputFormat', 'ReportRenderer']
