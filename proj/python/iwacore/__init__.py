from ._iwacore import *  # noqa: F401,F403
