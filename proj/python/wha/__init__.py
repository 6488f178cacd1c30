"""Numerical toolkit for finite dimensional C*-quantum groupoids."""

try:
    from ._wha import *  # noqa: F401,F403  (installed layout)
    from ._wha import __doc__ as _doc
except ImportError:  # in-tree layout: extension on PYTHONPATH next to the build
    from _wha import *  # noqa: F401,F403
    from _wha import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
