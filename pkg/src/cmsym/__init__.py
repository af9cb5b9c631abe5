"""Symmetric functions, CMS operators and their polynomial eigenfamilies."""

from . import jack  # noqa: F401  registers the Jack basis provider
