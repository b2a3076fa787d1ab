"""Connected tree-width toolkit."""

from .atomizer import adhesion_cycle, atomize, atomize_with_trace, exact_treewidth
from .brambles import (
    Bramble,
    connected_order,
    cycle_bramble,
    duality_width_bound,
    order,
    part_cover_witness,
    validate_bramble,
)
from .cycles import (
    Cycle,
    EdgeVector,
    cycle_closure,
    closure_distance_bound,
    decompose,
    enumerate_geodesic_cycles,
    find_closure_path,
    geodesic_cycle_basis,
    is_geodesic_cycle,
    longest_geodesic_cycle,
)
from .errors import FormatError, InternalCheckError, SizeLimitError
from .graph import (
    Graph,
    blocks,
    components,
    complete_graph,
    cycle_graph,
    distance_matrix,
    grid_graph,
    neighborhood,
    path_graph,
    star_graph,
)
from .navi import (
    SubNavi,
    build_geodesic_navi,
    check_subnavi,
    connectify,
    extract_decomposition_navi,
)
from .pipeline import PipelineResult, ctw_upper_bound, exact_ctw_small, theorem_width_bound
from .treedec import (
    Fatness,
    SplitContext,
    TreeDecomposition,
    contract_edge,
    decontract_part,
    fatness,
    glue_block_decompositions,
    split_at_edge,
    split_context,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
