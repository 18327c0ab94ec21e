"""chemmap: multi-representation chemical space mapping and analysis."""

__version__ = "0.1.0"
