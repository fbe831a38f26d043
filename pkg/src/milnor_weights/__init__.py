"""Weight systems of Milnor's string-link invariants on chord diagrams.

Three independent evaluators are provided: a recursive skein splitting, a
closed form read off the branched simplified intersection graph, and an
oracle that realizes the diagram as a singular string link and computes
Milnor invariants through the Magnus expansion.
"""

from .diagram import (
    ChordDiagram,
    DiagramError,
    MuIndex,
    canonical_form,
    canonical_key,
    enumerate_tree_diagrams,
    parse_diagram,
    random_diagram,
    random_tree_diagram,
    relabel_for_index,
    render_diagram,
    tree_diagram_count,
)
from .graphs import (
    BranchedSIG,
    ConnectionGraph,
    IntersectionGraph,
    build_bsig,
    connection_graph,
    intersection_graph,
    is_good,
    is_rooted_tree,
    is_tree,
    reconstruct,
    simplified_graph,
    to_dot,
)
from .magnus import MagnusSeries
from .oracle import finite_type_sum, linking, mu, weight_via_mu
from .stringlink import (
    GaussCodeError,
    LinkBuilder,
    Passage,
    StringLinkDiagram,
    borromean_commutator,
    hopf_clasp,
    parse_gauss,
    random_string_link,
    realize,
    render_gauss,
    resolutions,
    switch_crossing,
)
from .weights import (
    Pieces,
    Zero,
    choice_values,
    eval_closed,
    eval_recursive,
    evaluate,
    fourterm_quadruple,
    has_interlaced_pair,
    split,
)

__version__ = "0.1.0"
