"""Sample large simple digraphs by linearly rescaling their JDM and DCM."""

from .bounded import BoundedMatrixInstance, construct, enumerate_feasible, graphical
from .d2k import check_d2k, construct_graph
from .errors import Infeasible, InvariantBreach
from .graph import DirectedGraph, degrees, parse_edge_list, read_edge_list, write_edge_list
from .matrices import (
    DCM,
    JDM,
    DegreeMatrix,
    consistency_check,
    extract_dcm,
    extract_jdm,
    line_sums,
    sparsity_coefficients,
    sparsity_report,
)
from .metrics import deviation_bounds, distribution_distance, distributions, verify_bounds
from .pipeline import SampleRun, sample, sample_graph_input
from .rescale import derive_adjustment, parse_k, rescale

__version__ = "0.1.0"
