"""Tjurina modifications of ICMC2 singularities: exact computations."""
