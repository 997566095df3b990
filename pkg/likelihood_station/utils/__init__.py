"""
Utils package for Likelihood Station
"""

from .timing import StageTimer, deadline, groebner_timeout

__all__ = ["StageTimer", "deadline", "groebner_timeout"]
