"""Symbolic and numerical toolkit for the variable-coefficient Gardner equation."""
