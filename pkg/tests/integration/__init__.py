"""Integration tests for the CLI."""
