"""
Core package for SBW-Sim.

This package provides the foundation for the controller plugin architecture, including:
- Controller interface
- Controller registry
- Service interfaces
- Dependency injection container
"""

from core.container import Container
from core.controller import Controller
from core.controller_registry import ControllerRegistry
from core.services import PlantService, ReportService

__all__ = [
    'Controller',
    'ControllerRegistry',
    'Container',
    'PlantService',
    'ReportService',
]
