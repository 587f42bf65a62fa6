"""Spectral computations on S^3: harmonics, exact kernels, eigenvalues, certificates."""
