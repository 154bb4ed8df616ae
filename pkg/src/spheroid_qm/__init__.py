"""Quantum spectra of a free particle and an isotropic oscillator on a spheroid."""
