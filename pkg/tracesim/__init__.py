#!/usr/bin/env python3
#
# __init__.py - tracesim module __init__

"""
__init__.py - tracesim module __init__
"""


# import tracesim_common functions
#
# Sort the import list with: sort -d -u
#
from .tracesim_common import \
        DEFAULT_PARETO_MIN, \
        DEFAULT_PFM_REPS, \
        KL_EPSILON, \
        LIM_ALPHA_MAX, \
        LIM_ALPHA_MIN, \
        MODEL_KINDS, \
        MODEL_LIM, \
        MODEL_NDM, \
        MODEL_PFM, \
        MODEL_USPM, \
        PFM_ALPHA_MAX, \
        VERSION_TRACESIM, \
        clear_last_errmsg, \
        debug, \
        error, \
        info, \
        prerr, \
        return_last_errmsg, \
        setup_logger, \
        warning

# import graph_core functions
#
from .graph_core import \
        COST_REL_TOL, \
        DegreeDistribution, \
        EdgeWeights, \
        Route, \
        Topology, \
        TopologyMetrics, \
        average_degree, \
        bfs_path, \
        build_topology, \
        clustering_coefficient, \
        count_connected_triples, \
        count_triangles, \
        degree_distribution, \
        dijkstra_path, \
        heterogeneity, \
        is_valid_route, \
        make_edge_weights, \
        powerlaw_exponent, \
        topology_metrics, \
        uniform_weights

# import route_models functions
#
from .route_models import \
        ModelSpec, \
        bounded_pareto_cdf, \
        bounded_pareto_mean, \
        lim_routing_weights, \
        lim_weights, \
        model_weights, \
        pfm_weights, \
        route_ndm, \
        route_pair, \
        route_uspm, \
        route_weighted, \
        sample_bounded_pareto, \
        validate_model_spec

# import trace_io functions
#
from .trace_io import \
        TraceDataset, \
        common_destination_filter, \
        parse_edge_list, \
        parse_edge_list_labeled, \
        parse_traces, \
        read_edge_list_file, \
        read_traces_file, \
        write_edge_list, \
        write_traces

# import experiment functions
#
from .experiment import \
        ExperimentConfig, \
        ExperimentResult, \
        Histogram, \
        HopDegreeProfile, \
        SweepRow, \
        SweepTable, \
        alpha_sweep, \
        best_row_index, \
        distribution_distance, \
        entropy, \
        histogram_mean, \
        hop_degree_profile, \
        length_distribution, \
        mean_intermediate_degree, \
        merge_routes, \
        route_pairs, \
        run_experiment

# import synth functions
#
from .synth import \
        GenSpec, \
        generate, \
        generate_ba, \
        generate_er

# import cli functions
#
from .cli import \
        EXIT_DATA, \
        EXIT_OK, \
        EXIT_USAGE, \
        cmd_analyze, \
        cmd_gen, \
        cmd_rerun, \
        cmd_simulate, \
        cmd_sweep, \
        main_analyze, \
        main_gen, \
        main_rerun, \
        main_simulate, \
        main_sweep
