"""Haar-random pure states: coherence, negativity, distances to the maximally
entangled and maximally coherent sets, and their closed-form averages."""

__version__ = "0.1.0"
