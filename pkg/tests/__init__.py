"""Test suite for the gsdescent package."""
