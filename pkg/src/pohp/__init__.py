"""Exact solvers, reductions and generators for Hamiltonian path/cycle
problems with precedence constraints."""

__version__ = "0.1.0"
