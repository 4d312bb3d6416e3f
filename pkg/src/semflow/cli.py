"""Command-line entry point.

Exit codes: 0 success, 1 runtime error, 2 usage error, 3 validation
failure. Payload goes to stdout only; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from semflow import errors
from semflow.catalogue.rdfio import export_rdf
from semflow.catalogue.store import CatalogueStore
from semflow.collector.clock import SimulatedClock, SystemClock
from semflow.collector.runner import JobRunner, Scheduler, load_jobs
from semflow.gateway.bindings import BindingStore, Fetcher
from semflow.gateway.config import GatewayConfig
from semflow.gateway.pipeline import parse_pipeline, run_pipeline
from semflow.gateway.registry import Registry
from semflow.graphops.shapes import load_shapes, validate
from semflow.lifting.engine import lift, load_lookups
from semflow.lifting.model import LookupTable
from semflow.lifting.parser import parse_mapping
from semflow.lowering.parser import parse_template
from semflow.lowering.render import render
from semflow.rdf.ntriples import parse_ntriples, serialize_ntriples

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3


def _parse_sources(pairs: list[str]) -> dict[str, bytes]:
    sources = {}
    for pair in pairs:
        name, sep, path = pair.partition("=")
        if not sep:
            raise errors.SemflowError(f"--source expects name=path, got {pair!r}")
        sources[name] = Path(path).read_bytes()
    return sources


def _parse_lookup_args(pairs: list[str]) -> list[LookupTable]:
    import csv

    tables = []
    for pair in pairs:
        name, sep, path = pair.partition("=")
        if not sep:
            raise errors.SemflowError(f"--lookup expects name=csvpath, got {pair!r}")
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            next(reader, None)
            tables.append(LookupTable(name, {row[0]: row[1] for row in reader if len(row) >= 2}))
    return tables


def cmd_lift(args) -> int:
    mapping_path = Path(args.mapping)
    mapping = parse_mapping(mapping_path.read_text(encoding="utf-8"))
    lookups = load_lookups(mapping, mapping_path.parent)
    lookups.extend(_parse_lookup_args(args.lookup))
    graph = lift(mapping, _parse_sources(args.source), lookups)
    sys.stdout.write(serialize_ntriples(graph))
    return EXIT_OK


def cmd_lower(args) -> int:
    template = parse_template(Path(args.template).read_text(encoding="utf-8"))
    graph = parse_ntriples(Path(args.graph).read_text(encoding="utf-8"))
    sys.stdout.write(render(template, graph).text)
    return EXIT_OK


def cmd_pipeline_run(args) -> int:
    spec_path = Path(args.spec)
    spec = parse_pipeline(spec_path.read_text(encoding="utf-8"), pipeline_id=spec_path.stem)
    base = spec_path.parent
    registry = Registry(base / "mappings", base / "templates", base / "pipelines", base)
    result = run_pipeline(spec, _parse_sources(args.source), registry)
    if args.emit_graph:
        Path(args.emit_graph).write_text(serialize_ntriples(result.graph), encoding="utf-8")
    if result.output is not None:
        sys.stdout.write(result.output.text)
    else:
        sys.stdout.write(serialize_ntriples(result.graph))
    return EXIT_OK


def cmd_validate(args) -> int:
    shapes = load_shapes(Path(args.shapes).read_text(encoding="utf-8"))
    graph = parse_ntriples(Path(args.graph).read_text(encoding="utf-8"))
    report = validate(graph, shapes)
    sys.stdout.write(report.to_json() + "\n")
    return EXIT_OK if report.conforms else EXIT_VALIDATION


def cmd_mapping_check(args) -> int:
    try:
        mapping = parse_mapping(Path(args.file).read_text(encoding="utf-8"))
    except errors.SemflowError as exc:
        print(f"invalid mapping: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"ok: {len(mapping.maps)} entity map(s)", file=sys.stderr)
    return EXIT_OK


def cmd_template_check(args) -> int:
    try:
        template = parse_template(Path(args.file).read_text(encoding="utf-8"))
    except errors.SemflowError as exc:
        print(f"invalid template: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"ok: {template.output_format} template, {len(template.queries)} query(ies)",
          file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from semflow.gateway.app import create_app

    config = GatewayConfig.load(args.config)
    app = create_app(config, seed_demo=args.seed_demo)
    uvicorn.run(app, host=args.host, port=args.port or config.port, log_level="info")
    return EXIT_OK


def cmd_collect(args) -> int:
    config = GatewayConfig.load(args.config)
    registry = Registry(config.mappings_dir, config.templates_dir,
                        config.pipelines_dir, config.data_dir)
    bindings = BindingStore(config.bindings_path)
    fetcher = Fetcher(config.data_dir, config.secrets)
    clock = SimulatedClock() if args.fake_clock else SystemClock()
    runners = [JobRunner(job, registry, bindings, fetcher, clock, base_dir=config.base_dir)
               for job in load_jobs(args.jobs)]
    scheduler = Scheduler(runners, clock)
    try:
        counts = scheduler.run(max_ticks=args.ticks)
    except KeyboardInterrupt:
        counts = scheduler.run_counts
    for record_id, count in sorted(counts.items()):
        print(f"{record_id}: {count} run(s)", file=sys.stderr)
    return EXIT_OK


def cmd_catalogue_export(args) -> int:
    store = CatalogueStore.open(args.journal)
    sys.stdout.write(serialize_ntriples(export_rdf(store)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semflow")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lift", help="run a lifting mapping over source files")
    p.add_argument("--mapping", required=True)
    p.add_argument("--source", action="append", default=[], metavar="NAME=FILE")
    p.add_argument("--lookup", action="append", default=[], metavar="NAME=CSV")
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("lower", help="render a lowering template over an N-Triples graph")
    p.add_argument("--template", required=True)
    p.add_argument("--graph", required=True)
    p.set_defaults(fn=cmd_lower)

    p_pipe = sub.add_parser("pipeline", help="pipeline operations")
    pipe_sub = p_pipe.add_subparsers(dest="pipeline_command", required=True)
    p = pipe_sub.add_parser("run", help="run a pipeline spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--source", action="append", default=[], metavar="NAME=FILE")
    p.add_argument("--emit-graph", metavar="PATH")
    p.set_defaults(fn=cmd_pipeline_run)

    p = sub.add_parser("validate", help="validate a graph against shapes")
    p.add_argument("--shapes", required=True)
    p.add_argument("--graph", required=True)
    p.set_defaults(fn=cmd_validate)

    p_map = sub.add_parser("mapping", help="mapping document tools")
    map_sub = p_map.add_subparsers(dest="mapping_command", required=True)
    p = map_sub.add_parser("check", help="statically validate a mapping document")
    p.add_argument("file")
    p.set_defaults(fn=cmd_mapping_check)

    p_tpl = sub.add_parser("template", help="lowering template tools")
    tpl_sub = p_tpl.add_subparsers(dest="template_command", required=True)
    p = tpl_sub.add_parser("check", help="statically validate a lowering template")
    p.add_argument("file")
    p.set_defaults(fn=cmd_template_check)

    p = sub.add_parser("serve", help="run the gateway")
    p.add_argument("--config", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int)
    p.add_argument("--seed-demo", action="store_true",
                   help="seed the 12-record demo catalogue when the journal is empty")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("collect", help="run collection jobs")
    p.add_argument("--jobs", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--ticks", type=int)
    p.add_argument("--fake-clock", action="store_true")
    p.set_defaults(fn=cmd_collect)

    p_cat = sub.add_parser("catalogue", help="catalogue tools")
    cat_sub = p_cat.add_subparsers(dest="catalogue_command", required=True)
    p = cat_sub.add_parser("export", help="export all records as N-Triples")
    p.add_argument("--journal", required=True)
    p.set_defaults(fn=cmd_catalogue_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except errors.SemflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
