"""
Test suite for the concurrence toolkit.
"""
