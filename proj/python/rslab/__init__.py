try:
    from ._rslab import *  # noqa: F401,F403
    from ._rslab import __doc__  # noqa: F401
except ImportError:  # module built in-tree, not installed as a package
    from _rslab import *  # noqa: F401,F403
