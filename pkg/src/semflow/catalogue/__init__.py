from semflow.catalogue.model import AuditEvent, CatalogueRecord, Distribution, User
from semflow.catalogue.vocab import Vocabularies
from semflow.catalogue.store import CatalogueStore, TRANSITIONS
from semflow.catalogue.rdfio import HarvestReport, export_rdf, harvest_import
from semflow.catalogue.seed import seed_demo_catalogue

__all__ = [
    "CatalogueRecord", "Distribution", "User", "AuditEvent",
    "Vocabularies", "CatalogueStore", "TRANSITIONS",
    "export_rdf", "harvest_import", "HarvestReport", "seed_demo_catalogue",
]
