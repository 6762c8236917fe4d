"""litlens: co-citation mapping and citation-context analytics.

The engine turns a bibliographic corpus enriched with cited references and
citation contexts into monthly-sliced co-citation networks, labeled clusters,
uncertainty-scored contexts, concept trees, and structural-variation rankings
of newly published articles.
"""

__version__ = "0.1.0"
