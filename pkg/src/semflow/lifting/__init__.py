from semflow.lifting.model import (
    EntityMap,
    FunctionCall,
    JoinRule,
    LiftingMapping,
    LookupRef,
    LookupTable,
    PropertyRule,
    TermRule,
)
from semflow.lifting.parser import parse_mapping
from semflow.lifting.engine import lift, load_lookups
from semflow.lifting.sources import iterate

__all__ = [
    "LiftingMapping", "EntityMap", "TermRule", "PropertyRule", "JoinRule",
    "FunctionCall", "LookupTable", "LookupRef",
    "parse_mapping", "lift", "load_lookups", "iterate",
]
