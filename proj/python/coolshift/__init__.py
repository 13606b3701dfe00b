"""Thermal-aware model shifting: controller, simulator and analysis."""

from ._coolshift import *  # noqa: F401,F403
from ._coolshift import __version__  # noqa: F401
