from typing import ClassVar, Dict, List

from netmimo.modules.log import getLogger

log = getLogger(__name__)


class UnknownComponentError(ValueError):
    """Name not registered in a component factory"""

    def __init__(self, factory: str, component: str, name: str, supported: List[str]):
        self.name = name
        self.supported = supported
        super().__init__(
            f"unknown {component} '{name}' in {factory}. Supported: {', '.join(supported)}"
        )


class Factory:
    """
    Registry of named experiment components: precoding schemes, constraint kinds and
    subset evaluators are all chosen by name from configs and command lines.
    Every subclass gets its own registry. Classes register under a unique name with
    the @register decorator, create(name) returns a new instance.
    """

    # used in error messages, e.g. "scheme"
    component: ClassVar[str] = "component"
    registry: ClassVar[Dict[str, type]] = {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.registry = {}

    @classmethod
    def register(cls, name: str):
        def wrapper(wrapped: type) -> type:
            if name in cls.registry and cls.registry[name] is not wrapped:
                raise ValueError(
                    f"{cls.component} '{name}' is already registered in {cls.__name__}"
                    f" by {cls.registry[name].__name__}"
                )
            cls.registry[name] = wrapped
            log.debug("registered %s '%s' in %s", cls.component, name, cls.__name__)
            return wrapped

        return wrapper

    @classmethod
    def create(cls, name: str):
        if name not in cls.registry:
            raise UnknownComponentError(cls.__name__, cls.component, name, cls.names())
        return cls.registry[name]()

    @classmethod
    def names(cls) -> List[str]:
        return sorted(cls.registry)
