"""
Module: controller_registry
---------------------------
Provides functionality for discovering, registering, and creating controllers.

This module implements the ControllerRegistry class, which is responsible for:
1. Discovering controller plugins in the controllers package
2. Registering them under their config ``type``
3. Creating configured instances through the dependency injection container
"""

import importlib
import inspect
import logging
import pkgutil
from typing import Dict, List, Optional, Type

from pydantic import BaseModel

from core.config import NominalModel, PlantParams
from core.container import Container
from core.controller import Controller
from core.errors import ConfigError

# Configure logging
logger = logging.getLogger(__name__)


class ControllerRegistry:
    """Registry for discovering and loading controllers."""

    def __init__(self):
        self._controllers: Dict[str, Type[Controller]] = {}

    def register(self, controller_cls: Type[Controller]) -> None:
        """
        Register a controller class.

        Args:
            controller_cls: The controller class to register
        """
        controller_id = controller_cls.get_controller_id()

        if controller_id in self._controllers and self._controllers[controller_id] is not controller_cls:
            logger.warning(f"Controller with ID '{controller_id}' is already registered. Overwriting.")

        self._controllers[controller_id] = controller_cls
        logger.debug(f"Registered controller: {controller_id} ({controller_cls.__name__})")

    def get_controller(self, controller_id: str) -> Optional[Type[Controller]]:
        """
        Get a controller class by ID.

        Args:
            controller_id: The ID of the controller to retrieve

        Returns:
            The controller class if found, None otherwise
        """
        return self._controllers.get(controller_id)

    def get_all_controllers(self) -> Dict[str, Type[Controller]]:
        return dict(self._controllers)

    @property
    def controller_ids(self) -> List[str]:
        return sorted(self._controllers)

    def discover_controllers(self, package_name: str = "controllers") -> None:
        """
        Discover controllers in the specified package.

        This method scans the package for modules and registers every concrete
        class that implements the Controller interface.

        Args:
            package_name: The name of the package to scan
        """
        logger.debug(f"Discovering controllers in package: {package_name}")

        try:
            package = importlib.import_module(package_name)
        except ImportError:
            logger.error(f"Could not import package: {package_name}")
            return

        for _, name, _ in pkgutil.iter_modules(package.__path__, package.__name__ + "."):
            try:
                module = importlib.import_module(name)
            except ImportError as e:
                logger.error(f"Error importing module {name}: {str(e)}")
                continue

            for _, item in inspect.getmembers(module, inspect.isclass):
                if issubclass(item, Controller) and item is not Controller and not inspect.isabstract(item):
                    self.register(item)

        logger.debug(f"Discovered {len(self._controllers)} controllers")

    def create(
        self, params: BaseModel, plant: PlantParams, nominal: NominalModel, container: Container
    ) -> Controller:
        """
        Create and configure the controller selected by ``params.type``.

        Args:
            params: Validated controller parameters
            plant: Plant parameters of the run
            nominal: Nominal model of the run
            container: Container providing the controller's injected services

        Returns:
            The configured controller

        Raises:
            ConfigError: If no controller is registered for the type
        """
        controller_id = getattr(params, "type", None)
        controller_cls = self.get_controller(controller_id) if controller_id else None
        if controller_cls is None:
            raise ConfigError(f"unknown controller '{controller_id}', known: {self.controller_ids}", field="controller.type")
        controller = container.inject(controller_cls)
        controller.configure(params, plant, nominal)
        return controller
