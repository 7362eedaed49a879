"""
Concurrence topology.

Persistent homology of descending-frequency filtered complexes built from
binary data, as a library and a batch command-line tool.
"""

__version__ = "1.0.0"
