"""Brunnian link families and their volume bounds."""
