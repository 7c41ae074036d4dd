"""
Core module for configuration, errors, logging and calibration state
"""
