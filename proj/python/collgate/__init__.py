"""Collisional phase-gate simulator bindings.

In an installed wheel the compiled module sits inside this package. When
working from a plain CMake build tree, put the build directory on PYTHONPATH
and the top-level `_collgate` module is picked up instead.
"""

try:
    from ._collgate import *  # noqa: F401,F403
    from ._collgate import T_OSC  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout
    from _collgate import *  # noqa: F401,F403
    from _collgate import T_OSC  # noqa: F401
