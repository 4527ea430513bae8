"""Turanflag - Flag-algebra bounds and exact certificates for 3-graph Turan densities"""

__version__ = "1.0.0"
