"""Rule out or locate odd prime Fourier coefficients of mod-2-trivial newforms."""

__version__ = "0.1.0"
