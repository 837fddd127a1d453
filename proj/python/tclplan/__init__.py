"""Day-ahead planner for populations of thermostatically controlled loads.

The compiled extension carries the full API; this package re-exports it.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
