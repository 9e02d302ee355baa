from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from typing import Iterator, Optional

DEFAULT_STEP_BUDGET = 10**7


@dataclass(frozen=True)
class EngineSettings:
    """
    Knobs of the Gröbner engine.

    Parameters
    ----------
    step_budget : int
        Maximum number of reduction steps a single basis computation may take.
    cache_dir : str, optional
        Directory of the on-disk basis cache; no disk cache when None.
    """

    step_budget: int = DEFAULT_STEP_BUDGET
    cache_dir: Optional[str] = None

    def __post_init__(self) -> None:
        if self.step_budget <= 0:
            raise ValueError(f"The step budget must be positive, got {self.step_budget}.")


_settings: ContextVar[EngineSettings] = ContextVar("engine_settings", default=EngineSettings())


def engine_settings() -> EngineSettings:
    return _settings.get()


@contextmanager
def use_engine_settings(settings: EngineSettings = None, **overrides) -> Iterator[EngineSettings]:
    """
    Install engine settings for the enclosed block.

    Example
    -------
    >>> with use_engine_settings(step_budget=10_000):
    ...     groebner(generators, DEGREVLEX)
    """
    active = replace(settings or engine_settings(), **overrides)
    token = _settings.set(active)
    try:
        yield active
    finally:
        _settings.reset(token)
