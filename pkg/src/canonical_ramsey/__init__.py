"""Executable unordered canonical Ramsey theory: detectors, constructions, exact search."""
