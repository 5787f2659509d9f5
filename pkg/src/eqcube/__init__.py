"""Equitable 2-partitions of the binary n-cube at the correlation-immunity bound."""

__version__ = "0.1.0"
