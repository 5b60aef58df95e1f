"""Constellation design toolkit for digital over-the-air computation.

Thin wrapper around the compiled core. In an installed wheel the extension
lives inside this package; in a CMake build tree its directory is passed via
OACGRID_CORE_DIR.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:
    import os
    import sys

    _core_dir = os.environ.get("OACGRID_CORE_DIR")
    if _core_dir and _core_dir not in sys.path:
        sys.path.insert(0, _core_dir)
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__doc__ = _core_doc
