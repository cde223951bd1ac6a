"""Unit tests for the gsdescent package."""
