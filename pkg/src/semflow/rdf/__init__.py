from semflow.rdf.terms import (
    RDF_LANGSTRING,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_INTEGER,
    XSD_STRING,
    PrefixMap,
    Term,
    Triple,
    iri,
    literal,
)
from semflow.rdf.graph import Graph
from semflow.rdf.query import FilterClause, Query, TriplePattern, Var, match
from semflow.rdf.ntriples import parse_ntriples, serialize_ntriples, term_to_nt

__all__ = [
    "Term", "Triple", "Graph", "PrefixMap", "iri", "literal",
    "Var", "TriplePattern", "FilterClause", "Query", "match",
    "parse_ntriples", "serialize_ntriples", "term_to_nt",
    "RDF_TYPE", "RDF_LANGSTRING", "XSD_STRING", "XSD_INTEGER",
    "XSD_DECIMAL", "XSD_BOOLEAN", "XSD_DATETIME",
]
