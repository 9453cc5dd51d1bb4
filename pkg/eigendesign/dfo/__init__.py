"""Derivative-free optimization harness built on spectral designs."""
