"""Energy-optimal computation offloading over multiple radio links.

The heavy lifting lives in the compiled extension; this package simply
re-exports it.
"""

from mroffload._core import *  # noqa: F401,F403
from mroffload._core import __doc__  # noqa: F401

__version__ = "0.1.0"
