"""Unit tests for the solver layers."""
