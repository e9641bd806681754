"""voa-forge: exact engine for free-field vertex-algebra constructions."""

__version__ = "0.1.0"

from .exact import Rat, rat, Cyclo, BiSeries, series_inv, ct_extract

__all__ = ["Rat", "rat", "Cyclo", "BiSeries", "series_inv", "ct_extract",
           "__version__"]
