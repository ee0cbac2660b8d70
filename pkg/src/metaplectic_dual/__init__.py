"""Exact computation of metaplectic (twisted) dual root data.

Given a split reductive group's root datum, an even symmetric form on the
abelianization, integer multipliers for the simple factors and a level N,
the package computes the sharp sublattice, the root denominators and the
twisted dual root datum, and verifies the surrounding combinatorics
(Weyl-group equality, weight multiplicities, tame-symbol identities)
against independent brute-force oracles.  All arithmetic is exact.
"""
