"""Symplectic LL^T factorization of SPD symplectic matrices."""
