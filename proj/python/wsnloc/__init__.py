from ._wsnloc import *  # noqa: F401,F403
from ._wsnloc import __doc__  # noqa: F401
