"""Coefficient-aware spectral graph partitioning for additive Schwarz
preconditioning of sparse SPD systems."""

try:
    from ._cbspart import *  # noqa: F401,F403  (installed package layout)
    from ._cbspart import __doc__ as _doc
except ImportError:  # pragma: no cover - in-tree builds put _cbspart on sys.path
    from _cbspart import *  # noqa: F401,F403
    from _cbspart import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
