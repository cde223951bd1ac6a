"""Integration tests running the gsdescent CLI."""
