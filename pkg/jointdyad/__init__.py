"""
jointdyad: mixed-membership community model with joint dyad reciprocity.
"""

__version__ = "0.1.0"
