"""Envelope-aware dynamic NEM community market."""

from ._dnem import *  # noqa: F401,F403
from ._dnem import __doc__  # noqa: F401
