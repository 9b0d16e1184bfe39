"""Quaternionic observer formalism: algebras, Hilbert spaces, hyperkahler
structures, flows, cosmology, measurement semantics."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
