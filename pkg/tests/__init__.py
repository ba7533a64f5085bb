"""
Test suite for torus-debye.
"""
