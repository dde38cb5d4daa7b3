"""Blind-spot cyclist detection core, backed by the C++ extension module."""

try:
    from blindspot._blindspot import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _blindspot import *  # noqa: F401,F403  (build-tree layout)
