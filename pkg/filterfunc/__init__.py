"""
filterfunc - Filter functions on probabilistic knowledge structures

Belief, plausibility, k/s-filters, pignistic and contextual probabilities,
rough-set approximations and sampling distributions of their estimates.
"""

__version__ = "0.1.0"
__description__ = "Filter functions for evidence and rough sets with a sampling-distribution engine"
