"""Initializes the Visitall benchmark family."""
