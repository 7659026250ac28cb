"""Initializes the core benchmark family module."""
