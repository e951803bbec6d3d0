"""Quaternionic polynomial methods for SISO discrete-time control."""

from ._qctl import *  # noqa: F401,F403
from ._qctl import QctlError, Quaternion, QPoly, StateSpace, LeftFraction, RightFraction

i = Quaternion(0, 1, 0, 0)
j = Quaternion(0, 0, 1, 0)
k = Quaternion(0, 0, 0, 1)

__version__ = "0.1.0"
