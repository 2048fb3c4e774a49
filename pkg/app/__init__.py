"""
Ribbon Braiding Calculator - exact braid group representations from quantum group modules
"""

__version__ = "1.0.0"
