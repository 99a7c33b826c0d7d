"""Exact synthesis and verification of passive spring/damper/inerter networks."""

__version__ = "0.1.0"
