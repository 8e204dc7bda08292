"""Zoned SD-WSN transmission range control simulator."""

try:
    from ._rltrc import *  # noqa: F401,F403
except ImportError:  # in-tree build: the extension sits next to this package
    from _rltrc import *  # noqa: F401,F403

__version__ = "0.1.0"
