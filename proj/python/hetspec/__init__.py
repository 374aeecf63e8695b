"""Heterodyne optomechanics: closed-form spectra, thermometry, cooling limits
and a stochastic time-domain oracle. Thin re-export of the C++ core."""

from ._hetspec import *  # noqa: F401,F403
from ._hetspec import __doc__  # noqa: F401
