"""Linearizability of planar 3-webs with an infinitesimal symmetry."""

__version__ = "0.1.0"
