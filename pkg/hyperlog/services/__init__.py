"""
Numerical services: special functions, hypergeometric evaluation, checks and sweeps
"""
