"""Python view of the locotrans core (detector, classifiers, FSM, replay)."""

from ._core import *  # noqa: F401,F403
from ._core import ConfigError, DataError, Error  # noqa: F401
