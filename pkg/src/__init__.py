"""
Agglom - Factorization theory of graph agglomerations
Monoids of agglomerations A(G), their Diophantine presentations and the Bass ring pipeline.
"""

__version__ = "1.0.0"
__author__ = "Agglom Team"

from . import config
from .agglomeration import (Agglomeration, add, atoms, davenport, is_atom, is_prime_atom, max_length_atoms,
                            sequence_length, split_max, split_support, support, try_subtract)
from .bassring import (BassRingSpec, family, intersection_graph, iso_to_agglomerations, krsa_check, matrix_B,
                       matrix_C, realize, validate)
from .diophantine import (DiophantineMonoid, IntMatrix, dedup_transfer, hilbert_basis, length_set_dm,
                          lift_factorization, membership)
from .divisor_theory import basis_witnesses, class_group_rank, phi
from .factorization import (catenary_degree, distance, elasticity, factorizations, is_factorial,
                            is_half_factorial, length_set, omega_bounded, rho_k)
from .multigraph import (Multigraph, Subgraph, connected_components, degree, enumerate_connected_subgraphs,
                         is_acyclic, parse_graph, spanning_trees, tree_packing_number)

__all__ = [
    'config',
    'Multigraph', 'Subgraph', 'parse_graph', 'connected_components', 'is_acyclic',
    'enumerate_connected_subgraphs', 'spanning_trees', 'tree_packing_number', 'degree',
    'Agglomeration', 'add', 'try_subtract', 'support', 'split_max', 'split_support', 'is_atom', 'atoms',
    'is_prime_atom', 'sequence_length', 'davenport', 'max_length_atoms',
    'factorizations', 'length_set', 'distance', 'catenary_degree', 'omega_bounded', 'is_half_factorial',
    'is_factorial', 'elasticity', 'rho_k',
    'phi', 'basis_witnesses', 'class_group_rank',
    'DiophantineMonoid', 'IntMatrix', 'membership', 'hilbert_basis', 'dedup_transfer', 'lift_factorization',
    'length_set_dm',
    'BassRingSpec', 'validate', 'intersection_graph', 'matrix_B', 'matrix_C', 'iso_to_agglomerations',
    'krsa_check', 'realize', 'family',
]
