"""Builtin mapping functions.

All functions are pure string -> string transforms. `lookup` is resolved
against the tables registered for the lift run; a key miss suppresses the
rule instead of failing, matching the sparse-feed semantics of the engine.
"""

from __future__ import annotations

from decimal import Decimal

from semflow.errors import ArityError, LookupTableMissing, NonNumericOperand, UnknownFunction
from semflow.lifting.model import LookupTable
from semflow.rdf.query import parse_number


def format_number(x: float) -> str:
    """Shortest decimal form: no trailing '.0', no exponent below 1e15."""
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    r = repr(x)
    if ("e" in r or "E" in r) and abs(x) < 1e15:
        return format(Decimal(r), "f")
    return r


def _multiply(a: str, b: str) -> str:
    na, nb = parse_number(a), parse_number(b)
    if na is None or nb is None:
        raise NonNumericOperand(f"multiply needs numeric operands, got {a!r}, {b!r}")
    return format_number(na * nb)


_BUILTINS: dict[str, tuple[int, object]] = {
    "concat": (2, lambda a, b: a + b),
    "replace": (3, lambda s, old, new: s.replace(old, new)),
    "toUpper": (1, lambda s: s.upper()),
    "multiply": (2, _multiply),
    "geoPointWkt": (2, lambda lat, lon: f"POINT({lon} {lat})"),
    "lookup": (2, None),  # handled in call(): needs the table registry
}


def check_function(name: str, arg_count: int) -> None:
    if name not in _BUILTINS:
        raise UnknownFunction(f"no builtin function named {name!r}")
    arity = _BUILTINS[name][0]
    if arg_count != arity:
        raise ArityError(f"{name} takes {arity} argument(s), got {arg_count}")


def call(name: str, args: list[str], lookups: dict[str, LookupTable]) -> str | None:
    """Apply a builtin; returns None when the rule should be suppressed."""
    check_function(name, len(args))
    if name == "lookup":
        table_name, key = args
        table = lookups.get(table_name)
        if table is None:
            raise LookupTableMissing(f"lookup table {table_name!r} is not registered")
        return table.rows.get(key)
    fn = _BUILTINS[name][1]
    return fn(*args)  # type: ignore[operator]
