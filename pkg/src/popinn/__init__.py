"""Physics-informed neural surrogates for age-structured population
dynamics under fertility-policy scenarios, validated against a classical
finite-difference reference solver."""

__version__ = "0.1.0"

from . import autodiff, demography, reference  # noqa: F401
