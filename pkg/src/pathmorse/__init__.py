"""Path homology of digraphs and its reduction by discrete Morse functions."""

from .digraph import (Digraph, DigraphError, ParseError, UnknownVertexError, degree, is_transitive,
                      on_directed_cycle, parse_digraph, reachable, shortest_path, transitive_closure)
from .linalg import (QQ, LinalgError, Matrix, PrimeField, StabilizationError, Subspace, field_from_spec,
                     fixed_space, image, intersect, kernel, matrix_power_stabilize, rank, rref,
                     smith_normal_form)
from .paths import (Chain, PathBasis, boundary, boundary_matrix, enumerate_allowed, is_allowed,
                    omega_basis, path_bases)
from .morse import (ConditionStarError, MorseError, MorseFunction, MorseViolation, NotMorseError,
                    condition_star, condition_star_witness, critical_paths, extend_to_closure,
                    is_flat_witten_morse, is_morse, is_morse_bruteforce, morse_violation,
                    morse_violation_bruteforce, parse_values, path_value, single_zero_morse)
from .flow import (FlowError, FlowOperator, GradientField, check_omega_invariance, flow,
                   flow_invariant_space, gradient, stabilize)
from .homology import (ChainComplex, ChainComplexReport, DisagreementError, compare, default_max_dim,
                       direct_homology, morse_complex, morse_homology)

__version__ = "0.1.0"
