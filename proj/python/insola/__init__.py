from ._insola import *  # noqa: F401,F403
from ._insola import __version__  # noqa: F401
