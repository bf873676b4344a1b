"""
Core data models, interfaces, errors and validation.
"""
