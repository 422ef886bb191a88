#!/usr/bin/env python3
#
# cli.py - tracesim commands: analyze, simulate, sweep, gen and rerun

"""
cli.py - tracesim commands: analyze, simulate, sweep, gen and rerun

Each cmd_* function runs one command and returns an exit code:

    0   success
    1   usage error: bad flag, unknown model, out of range alpha, bad source spec
    2   data error: unreadable or malformed input, everything unreachable, lock timeout

Each main_* function is the argparse front end of a cmd_* function.

Every command writes a run manifest next to its output.  The manifest
holds the command, every resolved parameter and the SHA256 digest of
every input file.  Input paths are recorded absolute, so handing the
manifest to cmd_rerun() from any working directory reproduces the output
files byte for byte.
"""

# import modules
#
import sys
import os
import math
import inspect
import argparse

# import from modules
#
from dataclasses import replace
from pathlib import Path


# 3rd party imports
#
import numpy as np


# import the tracesim common utility code
#
# Sort the import list with: sort -d -u
#
from .experiment import \
        ExperimentConfig, \
        alpha_sweep, \
        histogram_mean, \
        hop_degree_profile, \
        length_distribution, \
        mean_intermediate_degree, \
        run_experiment
from .graph_core import \
        topology_metrics
from .route_models import \
        ModelSpec, \
        bounded_pareto_mean, \
        validate_model_spec
from .synth import \
        GEN_BA, \
        GEN_KINDS, \
        GenSpec, \
        generate
from .trace_io import \
        common_destination_filter, \
        read_edge_list_file, \
        read_traces_file, \
        write_edge_list, \
        write_traces
from .tracesim_common import \
        DEFAULT_PARETO_MIN, \
        DEFAULT_PFM_REPS, \
        MANIFEST_VERSION_VALUE, \
        MODEL_KINDS, \
        MODEL_LIM, \
        MODEL_PFM, \
        NO_COMMENT_VALUE, \
        VERSION_TRACESIM, \
        debug, \
        error, \
        fail, \
        info, \
        prerr, \
        read_json_file_nolock, \
        return_last_errmsg, \
        setup_logger, \
        sha256_file, \
        tracesim_dir_lock, \
        tracesim_dir_unlock, \
        warning, \
        write_csv_nolock, \
        write_json_nolock


# cli.py version
#
# NOTE: Use string of the form: "x.y[.z] YYYY-MM-DD"
#
VERSION_CLI = "1.3.0 2026-10-17"

# exit codes
#
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

# output file names
#
MANIFEST_FILE = "manifest.json"
METRICS_FILE = "metrics.json"
SUMMARY_FILE = "summary.json"
ROUTES_FILE = "routes.txt"
LENGTH_CSV = "length_distribution.csv"
HOP_PROFILE_CSV = "hop_profile.csv"
HOP_ENTROPY_CSV = "hop_entropy.csv"
SWEEP_CSV = "sweep.csv"
SWEEP_JSON = "sweep.json"
GEN_MANIFEST_SUFFIX = ".manifest.json"

# fixed CSV headers
#
LENGTH_HEADER = ["h", "probability"]
HOP_PROFILE_HEADER = ["h", "k", "p_h_k"]
HOP_ENTROPY_HEADER = ["h", "entropy"]
SWEEP_HEADER = ["alpha", "mean_len", "distance", "avg_degree", "gamma", "clustering", "heterogeneity", "best"]

# node selection specs
#
NODE_SPEC_ALL = "all"
NODE_SPEC_RANDOM = "random:"


class TracesimArgumentParser(argparse.ArgumentParser):
    """
    ArgumentParser that exits with the usage error code 1.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: error: {message}\n')


def _fail_code(program, code, msg):
    """
    Report a command failure on the log and stderr, return code.
    """
    error(f'{program}: {msg}')
    prerr(f'{program}: {msg}')
    return code


def _nats(value, log2):
    """
    Return value in bits when log2 is True, else as is.
    """
    if log2:
        return value / math.log(2.0)
    return value


def _unit(log2):
    return "bits" if log2 else "nats"


def resolve_node_spec(spec, labels, label_map, rng):
    """
    Turn a source / destination spec into a list of node ids.

    Given:
        spec        "all", "random:N" or a comma separated list of labels
        labels      labels of the graph, labels[id]
        label_map   label -> id
        rng         numpy Generator for "random:N"

    Returns:
        list of node ids    spec is usable
        None                malformed spec, unknown label or N too large
    """

    me = inspect.currentframe().f_code.co_name
    node_count = len(labels)

    # case: every node
    #
    if spec == NODE_SPEC_ALL:
        return list(range(node_count))

    # case: N distinct nodes drawn with the run seed
    #
    if spec.startswith(NODE_SPEC_RANDOM):
        count_str = spec[len(NODE_SPEC_RANDOM):]
        if not count_str.isdigit() or int(count_str) < 1:
            error(f'{me}: random count must be a positive integer: {spec}')
            return None
        count = int(count_str)
        if count > node_count:
            error(f'{me}: random count: {count} exceeds the node count: {node_count}')
            return None
        return sorted(int(v) for v in rng.choice(node_count, size=count, replace=False))

    # case: explicit labels
    #
    ids = []
    for label in spec.split(','):
        label = label.strip()
        if label not in label_map:
            error(f'{me}: unknown node label: {label!r}')
            return None
        ids.append(label_map[label])
    if not ids:
        error(f'{me}: empty node list')
        return None
    return ids


def build_manifest(command, parameters, inputs):
    """
    Return the run manifest of a command as a python dictionary.

    Given:
        command     command name
        parameters  keyword arguments that re-run the command
        inputs      input file paths
    """

    digests = {}
    for path in inputs:
        digest = sha256_file(path)
        if digest is None:
            return None
        digests[str(path)] = digest
    return {
        "no_comment": NO_COMMENT_VALUE,
        "manifest_JSON_format_version": MANIFEST_VERSION_VALUE,
        "command": command,
        "parameters": parameters,
        "inputs": digests,
        "tracesim_version": VERSION_TRACESIM,
    }


def _length_rows(hist):
    return [[h, mass] for h, mass in hist.bins.items()]


def _profile_rows(profile):
    return [[h, k, mass] for h, hist in enumerate(profile.hops) for k, mass in hist.bins.items()]


def _entropy_rows(profile):
    return [[h, value] for h, value in enumerate(profile.entropy)]


def _write_outputs(out_dir, json_files, csv_files, text_files=None):
    """
    Write JSON, CSV and text files into out_dir while holding the directory lock.

    Given:
        json_files      {filename: dict}
        csv_files       {filename: (header, rows)}
        text_files      {filename: function writing to an open text stream}, or None

    Returns:
        True    every file written
        False   lock timeout or write failure
    """

    me = inspect.currentframe().f_code.co_name
    debug(f'{me}: start')

    if tracesim_dir_lock(out_dir) is None:
        return False
    try:
        for name, content in json_files.items():
            if not write_json_nolock(Path(out_dir) / name, content):
                return False
        for name, (header, rows) in csv_files.items():
            if not write_csv_nolock(Path(out_dir) / name, header, rows):
                return False
        for name, writer in (text_files or {}).items():
            text_file = Path(out_dir) / name
            try:
                with open(text_file, 'w', encoding='utf-8', newline='\n') as text_fp:
                    writer(text_fp)
            except OSError as errcode:
                fail(me, f'open for writing: {text_file} failed: <<{errcode}>>')
                return False
    finally:
        tracesim_dir_unlock()

    debug(f'{me}: end: wrote {len(json_files) + len(csv_files)} files in: {out_dir}')
    return True


# pylint: disable=too-many-locals
#
def cmd_analyze(trace_file, out_dir, common_destinations=False, log2=False):
    """
    Analyze a trace file: induced topology metrics, route lengths and hop profile.

    Writes metrics.json, length_distribution.csv, hop_profile.csv,
    hop_entropy.csv and manifest.json into out_dir.

    Returns:
        exit code
    """

    program = "analyze"
    trace_file = Path(trace_file).resolve()
    info(f'{program}: trace file: {trace_file}')

    ds = read_traces_file(trace_file)
    if ds is None:
        return _fail_code(program, EXIT_DATA, f'cannot use trace file: {return_last_errmsg()}')
    if common_destinations:
        ds = common_destination_filter(ds)
        if ds is None:
            return _fail_code(program, EXIT_DATA, return_last_errmsg())

    metrics = topology_metrics(ds.topology)
    hist = length_distribution(ds.routes)
    if metrics is None or hist is None:
        return _fail_code(program, EXIT_DATA, return_last_errmsg())
    profile = hop_degree_profile(ds.routes, ds.topology)
    mean_len = histogram_mean(hist)

    parameters = {"trace_file": str(trace_file), "common_destinations": common_destinations}
    manifest = build_manifest(program, parameters, [trace_file])
    if manifest is None:
        return _fail_code(program, EXIT_DATA, return_last_errmsg())

    content = {
        "no_comment": NO_COMMENT_VALUE,
        "topology": metrics.as_dict(),
        "mean_route_length": mean_len,
        "route_count": len(ds.routes),
        "source_count": len(ds.sources),
        "destination_count": len(ds.destinations),
        "dropped_short": ds.dropped_short,
        "dropped_unresolved": ds.dropped_unresolved,
        "collapsed": ds.collapsed,
        "mean_intermediate_degree": mean_intermediate_degree(ds.routes, ds.topology),
    }
    if not _write_outputs(out_dir,
                          {METRICS_FILE: content, MANIFEST_FILE: manifest},
                          {LENGTH_CSV: (LENGTH_HEADER, _length_rows(hist)),
                           HOP_PROFILE_CSV: (HOP_PROFILE_HEADER, _profile_rows(profile)),
                           HOP_ENTROPY_CSV: (HOP_ENTROPY_HEADER, _entropy_rows(profile))}):
        return _fail_code(program, EXIT_DATA, f'cannot write output: {return_last_errmsg()}')

    print(f'routes: {len(ds.routes)}')
    print(f'nodes: {metrics.node_count}')
    print(f'edges: {metrics.edge_count}')
    print(f'avg_degree: {metrics.avg_degree!r}')
    print(f'gamma: {metrics.gamma!r}')
    print(f'clustering: {metrics.clustering!r}')
    print(f'heterogeneity: {metrics.heterogeneity!r}')
    print(f'mean_route_length: {mean_len!r}')
    print(f'max_hop_entropy: {_nats(max(profile.entropy), log2)!r} {_unit(log2)}')
    return EXIT_OK
#
# pylint: enable=too-many-locals


# pylint: disable=too-many-arguments
# pylint: disable=too-many-positional-arguments
# pylint: disable=too-many-locals
# pylint: disable=too-many-return-statements
#
def _prepare_run(program, graph_file, model, alpha, pareto_min, pareto_max,
                 sources, destinations, reps, seed, lim_raw):
    """
    Read the graph, resolve the model and the node sets shared by simulate and sweep.

    Returns:
        (EXIT_OK, (topology, labels, ExperimentConfig))     ready to run
        (exit code, None)                                   failure already reported
    """

    t, labels = read_edge_list_file(graph_file)
    if t is None:
        return _fail_code(program, EXIT_DATA, f'cannot use graph file: {return_last_errmsg()}'), None

    kind = model.upper()
    if kind not in MODEL_KINDS:
        return _fail_code(program, EXIT_USAGE, f'unknown model: {model}'), None
    spec = ModelSpec(kind=kind, alpha=float(alpha), pareto_min=float(pareto_min),
                     pareto_max=None if pareto_max is None else float(pareto_max),
                     seed=seed, lim_raw=lim_raw)
    if not validate_model_spec(spec, t.node_count):
        return _fail_code(program, EXIT_USAGE, return_last_errmsg()), None

    if reps is None:
        reps = DEFAULT_PFM_REPS if spec.stochastic else 1
    if reps < 1:
        return _fail_code(program, EXIT_USAGE, f'repetitions must be >= 1: {reps}'), None

    label_map = {label: i for i, label in enumerate(labels)}
    rng = np.random.default_rng(seed)
    source_ids = resolve_node_spec(sources, labels, label_map, rng)
    if source_ids is None:
        return _fail_code(program, EXIT_USAGE, f'bad sources spec: {sources}'), None
    destination_ids = resolve_node_spec(destinations, labels, label_map, rng)
    if destination_ids is None:
        return _fail_code(program, EXIT_USAGE, f'bad destinations spec: {destinations}'), None

    cfg = ExperimentConfig(model=spec, sources=tuple(source_ids), destinations=tuple(destination_ids),
                           repetitions=reps, base_seed=seed)
    return EXIT_OK, (t, labels, cfg)
#
# pylint: enable=too-many-arguments
# pylint: enable=too-many-positional-arguments
# pylint: enable=too-many-locals
# pylint: enable=too-many-return-statements


# pylint: disable=too-many-arguments
# pylint: disable=too-many-locals
#
def cmd_simulate(graph_file, out_dir, *, model, alpha=0.0, pareto_min=DEFAULT_PARETO_MIN, pareto_max=None,
                 sources=NODE_SPEC_ALL, destinations=NODE_SPEC_ALL, reps=None, seed=0, lim_raw=False,
                 threads=1, log2=False):
    """
    Route every source / destination pair of a graph with one model.

    Writes routes.txt, summary.json, length_distribution.csv, hop_profile.csv,
    hop_entropy.csv and manifest.json into out_dir.

    Returns:
        exit code
    """

    program = "simulate"
    graph_file = Path(graph_file).resolve()
    info(f'{program}: graph file: {graph_file} model: {model}')

    code, prepared = _prepare_run(program, graph_file, model, alpha, pareto_min, pareto_max,
                                  sources, destinations, reps, seed, lim_raw)
    if prepared is None:
        return code
    t, labels, cfg = prepared
    spec = cfg.model

    result = run_experiment(t, replace(cfg, threads=threads))
    if result is None:
        return _fail_code(program, EXIT_DATA, f'experiment failed: {return_last_errmsg()}')

    parameters = {
        "graph_file": str(graph_file),
        "model": spec.kind,
        "alpha": spec.alpha,
        "pareto_min": spec.pareto_min,
        "pareto_max": spec.pareto_max,
        "sources": sources,
        "destinations": destinations,
        "reps": cfg.repetitions,
        "seed": seed,
        "lim_raw": lim_raw,
    }
    manifest = build_manifest(program, parameters, [graph_file])
    if manifest is None:
        return _fail_code(program, EXIT_DATA, return_last_errmsg())

    summary = {
        "no_comment": NO_COMMENT_VALUE,
        "model": spec.tag,
        "repetitions": result.repetitions,
        "pair_count": len(result.routes) + result.unreachable_count,
        "route_count": len(result.routes),
        "unreachable_count": result.unreachable_count,
        "mean_route_length": result.mean_route_length,
        "mean_intermediate_degree": mean_intermediate_degree(result.routes, t),
        "topology": topology_metrics(t).as_dict(),
        "sampled": result.sampled_metrics.as_dict() if result.sampled_metrics else None,
    }
    if spec.kind == MODEL_PFM:
        summary["pareto_max"] = spec.resolved_pareto_max(t.node_count)
        summary["pareto_mean"] = bounded_pareto_mean(spec.alpha, spec.pareto_min,
                                                     spec.resolved_pareto_max(t.node_count))

    if not _write_outputs(out_dir,
                          {SUMMARY_FILE: summary, MANIFEST_FILE: manifest},
                          {LENGTH_CSV: (LENGTH_HEADER, _length_rows(result.length_distribution)),
                           HOP_PROFILE_CSV: (HOP_PROFILE_HEADER, _profile_rows(result.profile)),
                           HOP_ENTROPY_CSV: (HOP_ENTROPY_HEADER, _entropy_rows(result.profile))},
                          {ROUTES_FILE: lambda stream: write_traces(result.routes, stream, labels)}):
        return _fail_code(program, EXIT_DATA, f'cannot write output: {return_last_errmsg()}')

    print(f'model: {spec.tag}')
    print(f'routes: {len(result.routes)}')
    print(f'unreachable: {result.unreachable_count}')
    print(f'mean_route_length: {result.mean_route_length!r}')
    print(f'max_hop_entropy: {_nats(max(result.profile.entropy), log2)!r} {_unit(log2)}')
    return EXIT_OK
#
# pylint: enable=too-many-arguments
# pylint: enable=too-many-locals


# pylint: disable=too-many-arguments
# pylint: disable=too-many-locals
#
def cmd_sweep(graph_file, reference_file, out_dir, *, model, alphas, pareto_min=DEFAULT_PARETO_MIN,
              pareto_max=None, sources=NODE_SPEC_ALL, destinations=NODE_SPEC_ALL, reps=None, seed=0,
              lim_raw=False, threads=1, log2=False):
    """
    Run LIM or PFM once per alpha and compare each route length distribution
    with the one of a reference trace file.

    Writes sweep.csv, sweep.json and manifest.json into out_dir.

    Returns:
        exit code
    """

    program = "sweep"
    graph_file = Path(graph_file).resolve()
    reference_file = Path(reference_file).resolve()
    info(f'{program}: graph file: {graph_file} reference: {reference_file} model: {model}')

    if model.upper() not in (MODEL_LIM, MODEL_PFM):
        return _fail_code(program, EXIT_USAGE, f'sweep needs a model with alpha: lim or pfm, not: {model}')
    if not alphas:
        return _fail_code(program, EXIT_USAGE, 'empty alpha list')

    # validate every alpha before running any
    #
    code, prepared = _prepare_run(program, graph_file, model, alphas[0], pareto_min, pareto_max,
                                  sources, destinations, reps, seed, lim_raw)
    if prepared is None:
        return code
    t, _, cfg = prepared
    for alpha in alphas[1:]:
        if not validate_model_spec(ModelSpec(kind=cfg.model.kind, alpha=float(alpha),
                                             pareto_min=cfg.model.pareto_min, pareto_max=cfg.model.pareto_max),
                                   t.node_count):
            return _fail_code(program, EXIT_USAGE, return_last_errmsg())

    ref = read_traces_file(reference_file)
    if ref is None:
        return _fail_code(program, EXIT_DATA, f'cannot use reference file: {return_last_errmsg()}')
    reference = length_distribution(ref.routes)

    table = alpha_sweep(t, replace(cfg, threads=threads), [float(alpha) for alpha in alphas], reference)
    if table is None:
        return _fail_code(program, EXIT_DATA, f'sweep failed: {return_last_errmsg()}')

    parameters = {
        "graph_file": str(graph_file),
        "reference_file": str(reference_file),
        "model": cfg.model.kind,
        "alphas": [float(alpha) for alpha in alphas],
        "pareto_min": cfg.model.pareto_min,
        "pareto_max": cfg.model.pareto_max,
        "sources": sources,
        "destinations": destinations,
        "reps": cfg.repetitions,
        "seed": seed,
        "lim_raw": lim_raw,
    }
    manifest = build_manifest(program, parameters, [graph_file, reference_file])
    if manifest is None:
        return _fail_code(program, EXIT_DATA, return_last_errmsg())

    csv_rows = []
    json_rows = []
    for i, row in enumerate(table.rows):
        sampled = row.result.sampled_metrics
        csv_rows.append([row.alpha, row.result.mean_route_length, row.distance,
                         sampled.avg_degree, sampled.gamma, sampled.clustering, sampled.heterogeneity,
                         1 if i == table.best else 0])
        json_rows.append({
            "alpha": row.alpha,
            "mean_len": row.result.mean_route_length,
            "distance": row.distance,
            "unreachable_count": row.result.unreachable_count,
            "mean_intermediate_degree": mean_intermediate_degree(row.result.routes, t),
            "sampled": sampled.as_dict(),
        })
    content = {
        "no_comment": NO_COMMENT_VALUE,
        "model": cfg.model.kind,
        "rows": json_rows,
        "best_alpha": table.best_alpha,
        "best_alpha_by_property": table.best_alpha_by_property,
        "topology": table.topology_metrics.as_dict(),
        "reference_mean_route_length": histogram_mean(reference),
    }
    if not _write_outputs(out_dir,
                          {SWEEP_JSON: content, MANIFEST_FILE: manifest},
                          {SWEEP_CSV: (SWEEP_HEADER, csv_rows)}):
        return _fail_code(program, EXIT_DATA, f'cannot write output: {return_last_errmsg()}')

    for row in table.rows:
        print(f'alpha: {row.alpha!r} mean_len: {row.result.mean_route_length!r} '
              f'distance: {_nats(row.distance, log2)!r} {_unit(log2)}')
    print(f'best_alpha: {table.best_alpha!r}')
    return EXIT_OK
#
# pylint: enable=too-many-arguments
# pylint: enable=too-many-locals


# pylint: disable=too-many-arguments
#
def cmd_gen(output, *, kind, n, m=3, p=0.0, seed=0):
    """
    Generate a synthetic topology into an edge list file.

    The manifest is written to <output>.manifest.json.

    Returns:
        exit code
    """

    program = "gen"
    spec = GenSpec(kind=kind.upper(), n=n, m=m, p=p, seed=seed)
    info(f'{program}: {spec.as_dict()} output: {output}')

    if spec.kind not in GEN_KINDS:
        return _fail_code(program, EXIT_USAGE, f'unknown generator kind: {kind}')

    t = generate(spec)
    if t is None:
        return _fail_code(program, EXIT_USAGE, f'generation failed: {return_last_errmsg()}')

    out_path = Path(output)
    parameters = {"output_name": out_path.name, **spec.as_dict()}
    manifest = build_manifest(program, parameters, [])

    if tracesim_dir_lock(out_path.parent) is None:
        return _fail_code(program, EXIT_DATA, return_last_errmsg())
    try:
        with open(out_path, 'w', encoding='utf-8', newline='\n') as edge_fp:
            write_edge_list(t, edge_fp)
        if not write_json_nolock(f'{out_path}{GEN_MANIFEST_SUFFIX}', manifest):
            return _fail_code(program, EXIT_DATA, return_last_errmsg())
    except OSError as errcode:
        return _fail_code(program, EXIT_DATA, f'cannot write: {out_path} failed: <<{errcode}>>')
    finally:
        tracesim_dir_unlock()

    print(f'nodes: {t.node_count}')
    print(f'edges: {t.edge_count}')
    return EXIT_OK
#
# pylint: enable=too-many-arguments


# pylint: disable=too-many-return-statements
#
def cmd_rerun(manifest_file, out_dir, threads=1):
    """
    Re-run the command recorded in a run manifest into out_dir.

    Every input file digest is checked first; a changed input is a data error.
    A gen manifest writes its edge list into out_dir under the recorded name.

    Returns:
        exit code
    """

    program = "rerun"
    info(f'{program}: manifest: {manifest_file} out_dir: {out_dir}')

    manifest = read_json_file_nolock(manifest_file)
    if manifest is None:
        return _fail_code(program, EXIT_DATA, return_last_errmsg())
    for key in ("manifest_JSON_format_version", "command", "parameters", "inputs"):
        if key not in manifest:
            return _fail_code(program, EXIT_DATA, f'manifest lacks: {key}')
    if manifest["manifest_JSON_format_version"] != MANIFEST_VERSION_VALUE:
        return _fail_code(program, EXIT_DATA,
                          f'manifest format version: {manifest["manifest_JSON_format_version"]} '
                          f'!= {MANIFEST_VERSION_VALUE}')
    if manifest.get("tracesim_version") != VERSION_TRACESIM:
        warning(f'{program}: manifest written by tracesim version: {manifest.get("tracesim_version")} '
                f'running: {VERSION_TRACESIM}')

    for path, digest in manifest["inputs"].items():
        if sha256_file(path) != digest:
            return _fail_code(program, EXIT_DATA, f'input changed or missing: {path}')

    params = dict(manifest["parameters"])
    command = manifest["command"]

    # case: analyze
    #
    if command == "analyze":
        return cmd_analyze(params["trace_file"], out_dir, common_destinations=params["common_destinations"])

    # case: simulate
    #
    if command == "simulate":
        graph_file = params.pop("graph_file")
        return cmd_simulate(graph_file, out_dir, threads=threads, **params)

    # case: sweep
    #
    if command == "sweep":
        graph_file = params.pop("graph_file")
        reference_file = params.pop("reference_file")
        return cmd_sweep(graph_file, reference_file, out_dir, threads=threads, **params)

    # case: gen
    #
    if command == "gen":
        output = Path(out_dir) / params.pop("output_name")
        return cmd_gen(output, **params)

    return _fail_code(program, EXIT_DATA, f'unknown command in manifest: {command}')
#
# pylint: enable=too-many-return-statements


def _new_parser(program, description, version):
    """
    Return a parser with the -l and -L options every tool takes.
    """

    parser = TracesimArgumentParser(
                prog=program,
                description=description,
                epilog=f'{program} version: {version}')
    parser.add_argument('-l', '--log',
                        help="log via: stdout stderr syslog none (def: stderr)",
                        default="stderr",
                        action="store",
                        metavar='logtype',
                        type=str)
    parser.add_argument('-L', '--level',
                        help="set log level: dbg debug info warn warning error crit critical (def: info)",
                        default="info",
                        action="store",
                        metavar='dbglvl',
                        type=str)
    return parser


def _add_run_args(parser):
    """
    Options shared by simulate and sweep.
    """

    parser.add_argument('--pareto-min',
                        help=f'PFM bounded Pareto minimum L (def: {DEFAULT_PARETO_MIN})',
                        default=DEFAULT_PARETO_MIN,
                        metavar='L',
                        type=float)
    parser.add_argument('--pareto-max',
                        help='PFM bounded Pareto maximum M (def: node count)',
                        default=None,
                        metavar='M',
                        type=float)
    parser.add_argument('--sources',
                        help='all, random:N or comma separated node labels (def: all)',
                        default=NODE_SPEC_ALL,
                        metavar='spec')
    parser.add_argument('--destinations',
                        help='all, random:N or comma separated node labels (def: all)',
                        default=NODE_SPEC_ALL,
                        metavar='spec')
    parser.add_argument('--reps',
                        help=f'repetitions (def: 1, {DEFAULT_PFM_REPS} for pfm)',
                        default=None,
                        metavar='count',
                        type=int)
    parser.add_argument('--seed',
                        help='seed of every random draw (def: 0)',
                        default=0,
                        type=int)
    parser.add_argument('--threads',
                        help='routing threads, output does not depend on it; '
                             'routing holds the GIL so this gives no speedup (def: 1)',
                        default=1,
                        metavar='count',
                        type=int)
    parser.add_argument('--lim-raw',
                        help='route LIM on the raw normalized weights instead of relative costs',
                        action='store_true')
    parser.add_argument('--log2',
                        help='print entropy and distance in bits (files always hold nats)',
                        action='store_true')
    parser.add_argument('-o', '--out-dir',
                        help='output directory',
                        required=True,
                        metavar='dir')


def _check_threads(parser, threads):
    if threads < 1:
        parser.error(f'--threads must be >= 1: {threads}')


def main_analyze(argv=None):
    """
    Front end of cmd_analyze.
    """

    program = "tracesim_analyze"
    parser = _new_parser(program, "Analyze a traceroute trace file", VERSION_CLI)
    parser.add_argument('-c', '--common-destinations',
                        help='keep only routes to destinations reached from every source',
                        action='store_true')
    parser.add_argument('--log2',
                        help='print entropy in bits (files always hold nats)',
                        action='store_true')
    parser.add_argument('-o', '--out-dir',
                        help='output directory',
                        required=True,
                        metavar='dir')
    parser.add_argument('trace_file', help='trace file, one route per line')
    args = parser.parse_args(argv)
    setup_logger(args.log, args.level)

    return cmd_analyze(args.trace_file, args.out_dir,
                       common_destinations=args.common_destinations, log2=args.log2)


def main_simulate(argv=None):
    """
    Front end of cmd_simulate.
    """

    program = "tracesim_simulate"
    parser = _new_parser(program, "Simulate traceroute routes over a topology with one routing model",
                         VERSION_CLI)
    parser.add_argument('-m', '--model',
                        help='routing model',
                        required=True,
                        choices=[kind.lower() for kind in MODEL_KINDS])
    parser.add_argument('-a', '--alpha',
                        help='LIM or PFM alpha (def: 0)',
                        default=0.0,
                        type=float)
    _add_run_args(parser)
    parser.add_argument('graph_file', help='edge list file')
    args = parser.parse_args(argv)
    _check_threads(parser, args.threads)
    setup_logger(args.log, args.level)

    return cmd_simulate(args.graph_file, args.out_dir, model=args.model, alpha=args.alpha,
                        pareto_min=args.pareto_min, pareto_max=args.pareto_max,
                        sources=args.sources, destinations=args.destinations, reps=args.reps,
                        seed=args.seed, lim_raw=args.lim_raw, threads=args.threads, log2=args.log2)


def _parse_alphas(parser, text):
    """
    Return the floats of a comma separated alpha list.
    """
    try:
        return [float(field) for field in text.split(',') if field.strip()]
    except ValueError:
        parser.error(f'--alphas must be comma separated numbers: {text}')
    return []


def main_sweep(argv=None):
    """
    Front end of cmd_sweep.
    """

    program = "tracesim_sweep"
    parser = _new_parser(program, "Sweep LIM or PFM alpha against a reference trace file", VERSION_CLI)
    parser.add_argument('-m', '--model',
                        help='routing model (def: lim)',
                        default='lim',
                        choices=['lim', 'pfm'])
    parser.add_argument('-A', '--alphas',
                        help='comma separated alpha values',
                        required=True,
                        metavar='list')
    _add_run_args(parser)
    parser.add_argument('graph_file', help='edge list file')
    parser.add_argument('reference_file', help='reference trace file')
    args = parser.parse_args(argv)
    _check_threads(parser, args.threads)
    alphas = _parse_alphas(parser, args.alphas)
    setup_logger(args.log, args.level)

    return cmd_sweep(args.graph_file, args.reference_file, args.out_dir, model=args.model, alphas=alphas,
                     pareto_min=args.pareto_min, pareto_max=args.pareto_max,
                     sources=args.sources, destinations=args.destinations, reps=args.reps,
                     seed=args.seed, lim_raw=args.lim_raw, threads=args.threads, log2=args.log2)


def main_gen(argv=None):
    """
    Front end of cmd_gen.
    """

    program = "tracesim_gen"
    parser = _new_parser(program, "Generate a synthetic BA or ER topology edge list", VERSION_CLI)
    parser.add_argument('-k', '--kind',
                        help=f'generator (def: {GEN_BA.lower()})',
                        default=GEN_BA.lower(),
                        choices=[kind.lower() for kind in GEN_KINDS])
    parser.add_argument('-n', '--nodes',
                        help='node count',
                        required=True,
                        type=int)
    parser.add_argument('-m', '--attach',
                        help='BA edges per new node (def: 3)',
                        default=3,
                        type=int)
    parser.add_argument('-p', '--prob',
                        help='ER edge probability (def: 0.0)',
                        default=0.0,
                        type=float)
    parser.add_argument('--seed',
                        help='random seed (def: 0)',
                        default=0,
                        type=int)
    parser.add_argument('output', help='edge list file to write')
    args = parser.parse_args(argv)
    setup_logger(args.log, args.level)

    return cmd_gen(args.output, kind=args.kind, n=args.nodes, m=args.attach, p=args.prob, seed=args.seed)


def main_rerun(argv=None):
    """
    Front end of cmd_rerun.
    """

    program = "tracesim_rerun"
    parser = _new_parser(program, "Re-run a command from its run manifest", VERSION_CLI)
    parser.add_argument('--threads',
                        help='routing threads; routing holds the GIL so this gives no speedup (def: 1)',
                        default=1,
                        metavar='count',
                        type=int)
    parser.add_argument('-o', '--out-dir',
                        help='output directory',
                        required=True,
                        metavar='dir')
    parser.add_argument('manifest_file', help='manifest.json of an earlier run')
    args = parser.parse_args(argv)
    _check_threads(parser, args.threads)
    setup_logger(args.log, args.level)

    if not os.path.isfile(args.manifest_file):
        return _fail_code(program, EXIT_DATA, f'manifest file not found: {args.manifest_file}')
    return cmd_rerun(args.manifest_file, args.out_dir, threads=args.threads)
