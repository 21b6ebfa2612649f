from ._regpet import *  # noqa: F401,F403
from ._regpet import __version__  # noqa: F401
