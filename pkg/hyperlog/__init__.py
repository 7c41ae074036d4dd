"""
hyperlog: special functions of logarithmic type and numerical checks of their inequalities
"""

__version__ = "0.1.0"
