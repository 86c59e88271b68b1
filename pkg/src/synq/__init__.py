"""Game algebras of synchronous games: presentations, symbolic checks and matrix models."""
from .classical import (
    ClassicalPoint,
    cayley_table,
    convolution_closed,
    convolve,
    enumerate_classical_points,
    point_to_model,
)
from .game import (
    GameSpec,
    Graph,
    check_counit_condition,
    check_star,
    complete_graph,
    cycle_graph,
    make_easiest,
    make_graph_game,
    petersen_graph,
    validate_synchronous,
)
from .ncalg import NCElement, Verdict, equal_mod_relations, normalize, reduced_words
from .presentation import (
    Presentation,
    TheoremReport,
    delta_on_generator,
    present,
    verify_coassociativity,
    verify_counit_identity,
    verify_delta_well_defined,
    verify_group_identities,
)
from .repcheck import MatrixModel, compose_models, verify_model

__version__ = "0.1.0"
