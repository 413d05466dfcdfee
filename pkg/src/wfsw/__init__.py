"""Finite-scale workbench for weak factorization systems."""
