"""Initializes the Blocksworld4Ops benchmark family."""
