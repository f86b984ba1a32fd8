"""Graph-side constructions."""
