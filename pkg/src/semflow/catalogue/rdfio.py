"""DCAT-style RDF export of catalogue records and the harvest importer.

Export and import are mutual inverses on the content fields, which is how
metadata travels between federated catalogues.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from semflow.errors import Forbidden
from semflow.catalogue.model import CatalogueRecord, Distribution, User
from semflow.catalogue.store import CatalogueStore
from semflow.rdf.graph import Graph
from semflow.rdf.terms import RDF_TYPE, XSD_DATETIME, XSD_INTEGER, Term, Triple, iri, literal

DCAT = "http://www.w3.org/ns/dcat#"
DCTERMS = "http://purl.org/dc/terms/"
PLATFORM = "https://semflow.example/ns/catalogue#"
RECORD_NS = "https://semflow.example/catalogue/record/"

_KIND_CLASS = {"dataset": DCAT + "Dataset", "dataService": DCAT + "DataService"}
_CLASS_KIND = {v: k for k, v in _KIND_CLASS.items()}


def record_node(record_id: str) -> Term:
    return iri(RECORD_NS + record_id)


def export_record(record: CatalogueRecord, graph: Graph | None = None) -> Graph:
    g = graph if graph is not None else Graph()
    node = record_node(record.id)

    def emit(predicate: str, obj: Term) -> None:
        g.add(Triple(node, iri(predicate), obj))

    emit(RDF_TYPE, iri(_KIND_CLASS[record.kind]))
    emit(DCTERMS + "title", literal(record.title))
    emit(DCTERMS + "description", literal(record.description))
    if record.publisher_org:
        emit(DCTERMS + "publisher", literal(record.publisher_org))
    emit(DCTERMS + "created", literal(record.created, XSD_DATETIME))
    emit(DCTERMS + "modified", literal(record.modified, XSD_DATETIME))
    emit(PLATFORM + "status", literal(record.status))
    emit(PLATFORM + "dataRequirement", literal(record.data_requirement))
    emit(PLATFORM + "sourceType", literal(record.source_type))
    if record.case_study:
        emit(PLATFORM + "caseStudy", literal(record.case_study))
    if record.refresh_period_seconds is not None:
        emit(PLATFORM + "refreshPeriodSeconds", literal(str(record.refresh_period_seconds), XSD_INTEGER))
    if record.endpoint_url:
        emit(DCAT + "endpointURL", iri(record.endpoint_url))
    for dist in record.distributions:
        dist_node = iri(f"{RECORD_NS}{record.id}/dist/{dist.id}")
        emit(DCAT + "distribution", dist_node)
        g.add(Triple(dist_node, iri(RDF_TYPE), iri(DCAT + "Distribution")))
        g.add(Triple(dist_node, iri(DCAT + "mediaType"), literal(dist.format)))
        g.add(Triple(dist_node, iri(DCAT + "accessURL"), iri(dist.access_url)))
        g.add(Triple(dist_node, iri(PLATFORM + "semantics"), literal(dist.semantics)))
    return g


def export_rdf(store: CatalogueStore, record_id: str | None = None) -> Graph:
    """Export one record, or the whole catalogue when record_id is None."""
    graph = Graph()
    if record_id is not None:
        export_record(store.get(record_id), graph)
    else:
        for record in store.all_records():
            export_record(record, graph)
    return graph


@dataclass
class HarvestReport:
    records: list[CatalogueRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _first_literal(graph: Graph, node: Term, predicate: str) -> str | None:
    values = sorted(v.value for v in graph.objects(node, iri(predicate)) if v.is_literal)
    return values[0] if values else None


def _first_iri(graph: Graph, node: Term, predicate: str) -> str | None:
    values = sorted(v.value for v in graph.objects(node, iri(predicate)) if v.is_iri)
    return values[0] if values else None


def harvest_import(store: CatalogueStore, graph: Graph, actor: User) -> HarvestReport:
    """Import every dcat:Dataset / dcat:DataService node as a submitted record.

    Unknown vocabulary terms fall back to "unclassified"; nodes without a
    title are skipped with a warning.
    """
    if actor.role != "tmb":
        raise Forbidden("only the data management board may harvest metadata")

    report = HarvestReport()
    nodes: list[tuple[Term, str]] = []
    for class_iri, kind in _CLASS_KIND.items():
        for node in graph.subjects_of_type(iri(class_iri)):
            nodes.append((node, kind))
    nodes.sort(key=lambda pair: pair[0].value)

    for node, kind in nodes:
        title = _first_literal(graph, node, DCTERMS + "title")
        if title is None:
            report.warnings.append(f"skipped {node.value}: no dcterms:title")
            continue
        description = _first_literal(graph, node, DCTERMS + "description") or ""
        requirement = _first_literal(graph, node, PLATFORM + "dataRequirement") or "unclassified"
        if requirement not in store.vocab.data_requirement:
            requirement = "unclassified"
        source_type = _first_literal(graph, node, PLATFORM + "sourceType") or "unclassified"
        if source_type not in store.vocab.source_type:
            source_type = "unclassified"

        distributions = []
        for i, dist_node in enumerate(sorted(graph.objects(node, iri(DCAT + "distribution")),
                                             key=lambda t: t.value)):
            access = _first_iri(graph, dist_node, DCAT + "accessURL")
            if access is None:
                report.warnings.append(f"skipped distribution {dist_node.value}: no accessURL")
                continue
            distributions.append({
                "id": dist_node.value.rsplit("/", 1)[-1] or f"dist-{i}",
                "format": _first_literal(graph, dist_node, DCAT + "mediaType") or "application/octet-stream",
                "semanticsTag": _first_literal(graph, dist_node, PLATFORM + "semantics") or "raw",
                "accessUrl": access,
            })

        refresh = _first_literal(graph, node, PLATFORM + "refreshPeriodSeconds")
        draft = {
            "kind": kind,
            "title": title,
            "description": description or title,
            "publisherOrg": _first_literal(graph, node, DCTERMS + "publisher") or "",
            "caseStudy": _first_literal(graph, node, PLATFORM + "caseStudy") or "",
            "dataRequirement": requirement,
            "sourceType": source_type,
            "distributions": distributions,
        }
        if refresh is not None and refresh.isdigit():
            draft["refreshPeriodSeconds"] = int(refresh)
        if kind == "dataService":
            draft["endpointUrl"] = _first_iri(graph, node, DCAT + "endpointURL") or ""

        report.records.append(store.import_record(actor, draft))
    return report
