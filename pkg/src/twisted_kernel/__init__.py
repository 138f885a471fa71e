"""Twisted Kernel - Fourier coefficients of the twisted L-function kernel and the identities behind them."""

__version__ = "0.1.0"
