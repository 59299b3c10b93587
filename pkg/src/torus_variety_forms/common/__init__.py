"""Common tools."""
