"""Deterministic 12-record demo catalogue used by tests and the web UI.

Exactly three records end up approved for the Rennes case study; the
remaining nine cover every status and all four case studies.
"""

from __future__ import annotations

from semflow.catalogue.model import CatalogueRecord, User
from semflow.catalogue.store import CatalogueStore

_D = "distributions"

_SEED: list[dict] = [
    dict(title="Rennes road sensor feed", status="approved", owner="alice",
         caseStudy="Rennes", dataRequirement="Road Traffic Measurements",
         sourceType="real-time-feed", refreshPeriodSeconds=60,
         description="Loop detector counts for the Rennes ring road, refreshed every minute.",
         distributions=[
             {"id": "raw-csv", "format": "text/csv", "semanticsTag": "raw",
              "accessUrl": "https://data.semflow.example/rennes/detectors.csv"},
             {"id": "harmonised-json", "format": "application/json",
              "semanticsTag": "harmonised:detector-state",
              "accessUrl": "https://data.semflow.example/rennes/detectors.json"},
             {"id": "harmonised-csv", "format": "text/csv",
              "semanticsTag": "harmonised:observations",
              "accessUrl": "https://data.semflow.example/rennes/observations.csv"},
         ]),
    dict(title="Rennes stop point registry", status="approved", owner="alice",
         caseStudy="Rennes", dataRequirement="Public Transport Network",
         sourceType="static-dataset",
         description="Canonical stop points with codes and coordinates.",
         distributions=[
             {"id": "raw-csv", "format": "text/csv", "semanticsTag": "raw",
              "accessUrl": "https://data.semflow.example/rennes/stops.csv"},
         ]),
    dict(title="Rennes PT delay feed", status="approved", owner="bob",
         caseStudy="Rennes", dataRequirement="Public Transport Delays",
         sourceType="real-time-feed", refreshPeriodSeconds=60,
         description="Stop-level delay reports from the bus operator, XML push feed.",
         distributions=[
             {"id": "raw-xml", "format": "application/xml", "semanticsTag": "raw",
              "accessUrl": "https://data.semflow.example/rennes/delays.xml"},
             {"id": "fused-json", "format": "application/json",
              "semanticsTag": "fused:delays-fused",
              "accessUrl": "https://data.semflow.example/rennes/delays-fused.json"},
         ]),
    dict(title="Rennes event calendar", status="draft", owner="alice",
         caseStudy="Rennes", dataRequirement="Influencing Planned Events",
         sourceType="static-dataset",
         description="Sports and entertainment events affecting traffic."),
    dict(title="Rennes weather service", status="submitted", owner="bob",
         kind="dataService", endpointUrl="https://api.semflow.example/rennes/weather",
         caseStudy="Rennes", dataRequirement="Weather Data", sourceType="data-service",
         description="Current weather measurements around the metro area."),
    dict(title="Lisbon detector feed", status="approved", owner="bob",
         caseStudy="Lisbon", dataRequirement="Road Traffic Measurements",
         sourceType="real-time-feed", refreshPeriodSeconds=120,
         description="City-centre traffic detectors, JSON polling endpoint.",
         distributions=[
             {"id": "raw-json", "format": "application/json", "semanticsTag": "raw",
              "accessUrl": "https://data.semflow.example/lisbon/detectors.json"},
             {"id": "harmonised-json", "format": "application/json",
              "semanticsTag": "harmonised:detector-state",
              "accessUrl": "https://data.semflow.example/lisbon/state.json"},
         ]),
    dict(title="Lisbon GTFS schedules", status="submitted", owner="alice",
         caseStudy="Lisbon", dataRequirement="Public Transport Schedules",
         sourceType="static-dataset",
         description="Weekly GTFS export from the metropolitan operator."),
    dict(title="Athens travel time service", status="rejected", owner="alice",
         kind="dataService", endpointUrl="https://api.semflow.example/athens/tt",
         caseStudy="Athens", dataRequirement="Road Travel Times", sourceType="data-service",
         description="Segment travel times from roadside re-identification."),
    dict(title="Athens floating car data", status="deprecated", owner="bob",
         caseStudy="Athens", dataRequirement="Floating Vehicle Data",
         sourceType="real-time-feed",
         description="Probe vehicle GPS traces; superseded by the v2 feed."),
    dict(title="Manchester traffic flow archive", status="approved", owner="alice",
         caseStudy="Manchester", dataRequirement="Road Traffic Measurements",
         sourceType="historical-archive",
         description="Five years of 5-minute flow aggregates for model training.",
         distributions=[
             {"id": "raw-csv", "format": "text/csv", "semanticsTag": "raw",
              "accessUrl": "https://data.semflow.example/manchester/archive.csv"},
         ]),
    dict(title="Manchester situation exchange", status="submitted", owner="bob",
         caseStudy="Manchester", dataRequirement="Public Transport Network Events",
         sourceType="real-time-feed",
         description="Planned and unplanned PT network events."),
    dict(title="Manchester weather forecasts", status="draft", owner="bob",
         kind="dataService", endpointUrl="https://api.semflow.example/manchester/wx",
         caseStudy="Manchester", dataRequirement="Forecasted Weather Data",
         sourceType="data-service",
         description="48-hour forecast grid for the Greater Manchester area."),
]


def seed_demo_catalogue(store: CatalogueStore, publishers: dict[str, User], tmb: User) -> list[CatalogueRecord]:
    """Create the 12-record fixture; `publishers` maps user id -> User."""
    records = []
    for entry in _SEED:
        entry = dict(entry)
        target_status = entry.pop("status")
        owner = publishers[entry.pop("owner")]
        record = store.create_record(owner, entry)
        if target_status in ("submitted", "approved", "rejected", "deprecated"):
            record = store.transition(owner, record.id, "submit")
        if target_status in ("approved", "deprecated"):
            record = store.transition(tmb, record.id, "approve")
        if target_status == "rejected":
            record = store.transition(tmb, record.id, "reject")
        if target_status == "deprecated":
            record = store.transition(tmb, record.id, "deprecate")
        records.append(record)
    return records
