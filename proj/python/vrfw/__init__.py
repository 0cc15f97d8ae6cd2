"""Projection-free stochastic optimization.

Variance-reduced Frank-Wolfe solvers (svrf, storc) with exact, stochastic,
sliding, and projected-gradient baselines, over l1 / l2 / trace-norm balls.
"""

try:
    from ._vrfw import *  # noqa: F401,F403  (installed package layout)
    from . import _vrfw as _impl
except ImportError:  # in-tree builds put _vrfw on sys.path directly
    from _vrfw import *  # noqa: F401,F403
    import _vrfw as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
