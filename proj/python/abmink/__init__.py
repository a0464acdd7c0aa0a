"""Abraham and Minkowski electromagnetic momentum in media."""

from ._abmink import *  # noqa: F401,F403
from ._abmink import constants, covariant, scenarios  # noqa: F401

__version__ = "0.1.0"
