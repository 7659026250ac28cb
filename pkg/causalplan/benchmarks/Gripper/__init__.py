"""Initializes the Gripper benchmark family."""
