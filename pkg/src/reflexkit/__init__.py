"""Exact invariants of reflexive lattice polytopes and toric Fano varieties."""
