#!/usr/bin/env python
"""
Agglom Configuration
Centralized limits and defaults for the factorization toolkit.
"""

try:
    from .env_loader import get_env_var, get_bool_env, get_int_env, get_cached_env
except ImportError:
    from env_loader import get_env_var, get_bool_env, get_int_env, get_cached_env

# Load environment variables once
_env_vars = get_cached_env()

# Factorization enumeration
DEFAULT_CAP = get_int_env("AGGLOM_CAP", 10000, _env_vars)  # max factorizations per element
FACTORIZER_MEMO_LIMIT = get_int_env("AGGLOM_MEMO_LIMIT", 500000, _env_vars)  # memo entries kept per graph engine

# Elasticity and refined elasticity searches
DEFAULT_SEARCH_DEPTH = get_int_env("AGGLOM_SEARCH_DEPTH", 8, _env_vars)      # max atoms per searched element
ELASTICITY_SEARCH_BUDGET = get_int_env("AGGLOM_SEARCH_BUDGET", 200, _env_vars)  # max elements examined

# Spanning tree packing
MAX_PARTITION_VERTICES = 10           # Bell(10) = 115975 partitions
PACKING_CROSSCHECK_MAX_VERTICES = 6   # exhaustive disjoint-tree search below this size
PACKING_CROSSCHECK_MAX_EDGES = 10

# Half-factoriality witnesses get a full set of lengths up to this total weight
WITNESS_CROSSCHECK_MAX_WEIGHT = 30

# Hilbert basis completion
HILBERT_COORDINATE_CAP = get_int_env("AGGLOM_HILBERT_CAP", 12, _env_vars)
HILBERT_FRONTIER_LIMIT = 200000

# Bounded-box verification
OMEGA_DEFAULT_CAP = 2
ISO_BOX = 2

# Output
JSON_INDENT = None  # compact, byte-stable output

# Debug Settings (can be overridden by environment variables)
DEBUG_MODE = get_bool_env("DEBUG_MODE", False, _env_vars)
LOG_LEVEL = get_env_var("AGGLOM_LOG_LEVEL", "DEBUG" if DEBUG_MODE else "WARNING", _env_vars)
