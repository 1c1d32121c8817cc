"""Psycholinguistic profiling of drunk texters from tweet timelines."""

__version__ = "0.1.0"
