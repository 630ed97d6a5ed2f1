"""Exact spectral toolkit for lollipop graphs and their relatives."""
