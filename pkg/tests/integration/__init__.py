"""Integration tests that drive the f9_fixed_point command line."""
