"""Exact symbolic engine for quantum Koszul codifferentials on finitely
presented quantum spacetimes, and for the Riemannian data they induce."""

__version__ = "0.1.0"
