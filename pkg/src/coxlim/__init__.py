"""Lorentzian Coxeter groups on the ellipsoid chart.

Build a reflection group from bond orders (or a Gram matrix), act with
it projectively on the chart where the base-point functional equals one,
measure with the Hilbert metric, enumerate roots and orbit frontiers,
verify the fundamental-chamber and Dirichlet properties, and run the
perturbation experiments behind the boundary-map (Cannon-Thurston)
construction.
"""

from .coxeter import (
    ActionClass,
    Ball,
    CoxeterMatrix,
    CoxeterSystem,
    GroupElement,
    INFINITY,
    Word,
    act_word,
    bilinear,
    build_system,
    classify_action,
    enumerate_ball,
    normalize,
    normalized_act,
    one_norm,
    perron_base_point,
    quad_form,
    reflect_simple,
    subsystem_type,
    system_from_gram,
    word_matrix,
)
from .errors import (
    CoxlimError,
    EnumerationCapError,
    InvariantError,
    NumericalError,
    ReducibleError,
    SignatureError,
    ValidationError,
)
from .hilbert import (
    boundary_hits,
    cross_ratio,
    distance,
    distance_euclidean_ratio,
    distance_many,
    estimate_delta,
    geodesic_point,
    gromov_product,
    locate_point,
    sample_interior,
    visual_metric,
)
from .domain import (
    chamber_of,
    cusp_detect,
    dirichlet_check,
    in_chamber,
    in_chamber_core,
    qi_estimate,
    sample_chamber,
)
from .limits import boundary_pairing_decay, orbit_frontier, orbit_root_hausdorff
from .numeric import (
    EigenResult,
    Signature,
    eig_sym,
    hausdorff,
    quantize_key,
    signature_of,
    solve_quadratic,
)
from .roots import enumerate_roots, frontier, sign_coherence_check
from .cannon import (
    Perturbation,
    ShortSequence,
    affine_bonds,
    dihedral_collision_report,
    growth_lower_bound,
    operator_norm_bound,
    perturbation_decay_table,
    perturbed_act,
    perturbed_gram,
    short_sequence,
)

__version__ = "0.1.0"
