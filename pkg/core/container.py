"""
Module: container
---------------
Provides a simple dependency injection container for managing service instances.

Service implementations are registered against their interface; controllers and
managers receive them through constructor parameters annotated with the interface.
"""

import inspect
import logging
from typing import Any, Dict, Optional, Type, TypeVar, get_type_hints

# Configure logging
logger = logging.getLogger(__name__)

T = TypeVar("T")


class Container:
    """Simple dependency injection container."""

    def __init__(self):
        self._services: Dict[str, Any] = {}

    def register(self, interface: Type[T], implementation: T) -> None:
        """
        Register a service implementation for an interface.

        Args:
            interface: The interface class
            implementation: The implementation instance
        """
        if not isinstance(implementation, interface):
            raise TypeError(f"{type(implementation).__name__} does not implement {interface.__name__}")
        self._services[interface.__name__] = implementation
        logger.debug(f"Registered service: {interface.__name__}")

    def resolve(self, interface: Type[T]) -> Optional[T]:
        """
        Resolve a service implementation for an interface.

        Args:
            interface: The interface class

        Returns:
            The implementation instance if registered, None otherwise
        """
        service = self._services.get(interface.__name__)
        if service is None:
            logger.debug(f"No implementation registered for interface: {interface.__name__}")
        return service

    def inject(self, cls: Type[T], **overrides: Any) -> T:
        """
        Create an instance of a class with dependencies injected.

        Each constructor parameter annotated with a registered interface receives
        that service; explicit keyword overrides win.

        Args:
            cls: The class to instantiate
            **overrides: Arguments passed through unchanged

        Returns:
            An instance of the class with dependencies injected

        Raises:
            ValueError: If a required dependency is not registered
        """
        init = cls.__init__
        if init is object.__init__:
            return cls(**overrides)

        hints = get_type_hints(init)
        args: Dict[str, Any] = {}
        for param_name, param in inspect.signature(init).parameters.items():
            if param_name == "self" or param.kind in (param.VAR_POSITIONAL, param.VAR_KEYWORD):
                continue
            if param_name in overrides:
                args[param_name] = overrides[param_name]
                continue
            annotation = hints.get(param_name)
            if annotation is None:
                continue
            service = self.resolve(annotation) if inspect.isclass(annotation) else None
            if service is not None:
                args[param_name] = service
            elif param.default is inspect.Parameter.empty:
                raise ValueError(f"No implementation registered for required dependency: {annotation}")

        instance = cls(**args)
        logger.debug(f"Created instance of {cls.__name__} with injected dependencies")
        return instance
