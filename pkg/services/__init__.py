"""
Services package for SBW-Sim.

This package provides implementations of the service interfaces defined in the core package.
"""

from services.plant_service import PlantServiceImpl
from services.report_service import ReportServiceImpl

__all__ = [
    'PlantServiceImpl',
    'ReportServiceImpl',
]
