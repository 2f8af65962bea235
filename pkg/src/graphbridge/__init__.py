"""graphbridge: linked-view coordination for temporal multidimensional graphs."""

__version__ = "0.1.0"
