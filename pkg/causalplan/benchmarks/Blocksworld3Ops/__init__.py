"""Initializes the Blocksworld3Ops benchmark family."""
