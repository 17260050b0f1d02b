"""
Dyck Cluster Tool

Exact computations for the Dyck-path model of type-A cluster algebras:
Dyck-path shift categories, quiver representations, Nakayama algebras,
snake graphs, and cluster variables computed both from Dyck paths and by
seed mutation, with a harness that checks the two agree.
"""

__version__ = "0.3.0"
