"""
Computations and constructions behind gaps between totients.
"""

__version__ = '1.0.0'
