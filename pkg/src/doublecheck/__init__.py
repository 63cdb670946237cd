"""Exact arithmetic for the doubling-method standard L-function apparatus on
classical groups: local Euler factors, Hecke coset decompositions, Gauss
sums, Eisenstein Fourier coefficients, archimedean Gamma constants and
p-adic interpolation bookkeeping, each validated against brute-force or
numerical oracles."""

__version__ = "0.1.0"
