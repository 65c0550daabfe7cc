"""Closed-form option pricing: power binaries, savings plans, geometric Asians."""

try:
    from ._powerbinary import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _powerbinary import *  # noqa: F401,F403  (in-tree build layout)
