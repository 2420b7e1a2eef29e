"""Size-preserving circuit-to-Hamiltonian constructions at desk scale.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from _satham import (  # noqa: F401
    approximate_qpf,
    brute_force_sat,
    build_sat_verifier,
    circuit_to_hamiltonian,
    clock_conditions_ok,
    clock_table,
    evaluate,
    exact_partition_function,
    ground_energy,
    parse_dimacs_summary,
    sat_to_3lh_summary,
    sat_to_klh_trivial,
    verifier_output_bit,
)

__all__ = [
    "approximate_qpf",
    "brute_force_sat",
    "build_sat_verifier",
    "circuit_to_hamiltonian",
    "clock_conditions_ok",
    "clock_table",
    "evaluate",
    "exact_partition_function",
    "ground_energy",
    "parse_dimacs_summary",
    "sat_to_3lh_summary",
    "sat_to_klh_trivial",
    "verifier_output_bit",
]
