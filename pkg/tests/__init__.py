"""Test package for f9_fixed_point."""
