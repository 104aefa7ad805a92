"""Construction and numerical verification of PT-symmetric
quasi-exactly-solvable potentials.

The heavy lifting lives in the compiled ``_ptqes`` extension; this package
re-exports its surface.
"""

from ._ptqes import *  # noqa: F401,F403

__version__ = "0.1.0"
