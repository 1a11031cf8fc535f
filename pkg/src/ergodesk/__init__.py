"""Desk-scale toolkit for computable groups and effective ergodic averaging.

Subpackages:
  groups   — coded computable groups (Z^d, discrete Heisenberg), word norms,
             Cayley balls, canonical indices
  growth   — exact ball-cardinality models and polynomial root isolation
  foelner  — Foelner defects, the two-sided smallest-index search, tempering
  cantor   — Cantor-space patterns, Bernoulli measures, shift actions,
             observables, ergodic averages
  kucera   — the nested-tower construction with exact decay bounds
  cli      — the `ergodesk` experiment runner
"""

__version__ = "0.1.0"
