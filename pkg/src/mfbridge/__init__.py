"""Symbolic toolkit bridging a first-order set language and a dependent
type-theoretic pre-syntax: parsers, translations in both directions, a
bounded-formula classifier, a rule-schema catalog, and a finite-model oracle
for property-checking the translations."""

__version__ = "0.1.0"
