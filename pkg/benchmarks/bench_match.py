#!/usr/bin/env python3
"""Benchmark: compiled pattern-join kernel vs the pure-Python fallback.

Builds a synthetic detector graph and times the three-pattern join that a
typical lowering query performs. Usage:

    python benchmarks/bench_match.py [n_detectors] [repeats]
"""

import sys
import time

from semflow.rdf import Graph, Query, Triple, TriplePattern, Var, iri, literal, match
from semflow.rdf import kernel

MOB = "https://semflow.example/vocab/mobility#"
DATA = "https://data.semflow.example/detector/"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


def build_graph(n: int) -> Graph:
    g = Graph()
    for i in range(n):
        node = iri(f"{DATA}{i:05}")
        g.add(Triple(node, iri(RDF_TYPE), iri(MOB + "TrafficDetector")))
        g.add(Triple(node, iri(MOB + "detectorId"), literal(f"D{i:05}")))
        g.add(Triple(node, iri(MOB + "flow"), literal(str((i * 37) % 900))))
        g.add(Triple(node, iri(MOB + "observedAt"), literal("2026-08-10T09:00:00Z")))
    return g


QUERY = Query((
    TriplePattern(Var("d"), iri(RDF_TYPE), iri(MOB + "TrafficDetector")),
    TriplePattern(Var("d"), iri(MOB + "detectorId"), Var("id")),
    TriplePattern(Var("d"), iri(MOB + "flow"), Var("flow")),
), order_by="id")


def timed(label: str, graph: Graph, repeats: int) -> float:
    best = float("inf")
    rows = None
    for _ in range(repeats):
        start = time.perf_counter()
        rows = match(graph, QUERY)
        best = min(best, time.perf_counter() - start)
    print(f"{label:>10}: {best * 1000:8.2f} ms/match   ({len(rows)} rows)")
    return best


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    graph = build_graph(n)
    print(f"graph: {len(graph)} triples, query: {len(QUERY.patterns)} patterns, "
          f"best of {repeats}")

    if kernel.join_patterns_c is None:
        print("compiled kernel not built; showing fallback only")
        kernel.USING_COMPILED = False
        timed("pure", graph, repeats)
        return

    kernel.USING_COMPILED = True
    compiled = timed("compiled", graph, repeats)
    kernel.USING_COMPILED = False
    pure = timed("pure", graph, repeats)
    kernel.USING_COMPILED = True
    print(f"{'speedup':>10}: {pure / compiled:8.1f}x")


if __name__ == "__main__":
    main()
