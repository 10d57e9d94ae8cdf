"""Python bindings for the fockpack C++ library."""

from ._fockpack import *  # noqa: F401,F403
from ._fockpack import ComputationError, InvalidInput, __version__

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
