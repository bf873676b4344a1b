"""
Unit and integration tests for the fast symmetric product library.
"""
