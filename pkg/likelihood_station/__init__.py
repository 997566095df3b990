"""
Likelihood Station - likelihood ideals, ML degrees and local maxima of algebraic statistical models
"""

__version__ = "0.1.0"
