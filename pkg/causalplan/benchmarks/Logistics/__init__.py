"""Initializes the Logistics benchmark family."""
