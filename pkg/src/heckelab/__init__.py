"""Exact census of Hecke eigenvalue fields for newforms on Gamma_0(N).

The pipeline: modular symbols with exact rational arithmetic give Hecke
operators; the new cuspidal subspace splits into Galois orbits of newforms;
per prime, the characteristic polynomial of T_p on an orbit decides whether
a_p generates the orbit's coefficient field; inner twists and CM explain the
failures and predict their densities; a brute-force lab verifies the finite
matrix-group counting that underpins the density zero results.
"""

from .dimensions import dim_cusp_forms, dim_new_cusp_forms, genus_x0
from .gl2lab import conjugacy_classes, run_grid
from .modsym import ModularSymbolSpace, modular_symbol_space
from .orbits import (
    NewformOrbit,
    OrbitCensus,
    census,
    count_function,
    decompose,
    generation_verdicts,
    orbit_charpolys,
)
from .twists import (
    TwistAnalysis,
    compare_density,
    detect_cm,
    detect_inner_twists,
    predicted_generation_density,
    subgroup_densities,
)

__version__ = "0.1.0"

__all__ = [
    "ModularSymbolSpace",
    "NewformOrbit",
    "OrbitCensus",
    "TwistAnalysis",
    "census",
    "compare_density",
    "conjugacy_classes",
    "count_function",
    "decompose",
    "detect_cm",
    "detect_inner_twists",
    "dim_cusp_forms",
    "dim_new_cusp_forms",
    "generation_verdicts",
    "genus_x0",
    "modular_symbol_space",
    "orbit_charpolys",
    "predicted_generation_density",
    "run_grid",
    "subgroup_densities",
    "__version__",
]
