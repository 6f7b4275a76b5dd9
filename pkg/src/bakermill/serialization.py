"""Instance, profile and script files.

Instances travel as JSON documents:

    {
      "version": 1,
      "locations": ["x", "y"],
      "millers": 2,                      # or a list of positive weights
      "bakers": [
        {"range": ["x"], "weight": 1},   # weight optional, default 1
        {"range": ["x", "y"]}
      ]
    }

A document parses to a plain ``Instance`` unless some weight differs from
1, in which case it parses to a ``WeightedInstance``. Profiles are JSON
objects mapping agent position to location name:

    {"bakers": ["x", "x", "y"], "millers": ["x", "y"]}

Scripts are line oriented: ``kind origin target [weight]`` per move, with
blank lines and ``#`` comments ignored.
"""

from __future__ import annotations

import hashlib
import json

from .dynamics import ScriptedMove, WeightedInstance
from .model import GameError, Instance, StrategyProfile

SCHEMA_VERSION = 1


class ParseError(GameError):
    pass


def _require(data: dict, key: str, context: str):
    if key not in data:
        raise ParseError(f"{context}: missing field {key!r}")
    return data[key]


def _positive_int(value, context: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParseError(f"{context}: must be a positive integer, got {value!r}")
    return value


def parse_instance(text: str):
    """Parse a JSON instance document; returns Instance or WeightedInstance."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("document: expected an object at the top level")

    version = _require(data, "version", "document")
    if version != SCHEMA_VERSION:
        raise ParseError(f"version: expected {SCHEMA_VERSION}, got {version!r}")

    locations = _require(data, "locations", "document")
    if (
        not isinstance(locations, list)
        or not locations
        or not all(isinstance(name, str) and name for name in locations)
    ):
        raise ParseError("locations: expected a nonempty list of names")
    if len(set(locations)) != len(locations):
        dup = next(name for name in locations if locations.count(name) > 1)
        raise ParseError(f"locations: duplicate name {dup!r}")
    index = {name: i for i, name in enumerate(locations)}

    millers = _require(data, "millers", "document")
    if isinstance(millers, list):
        if not millers:
            raise ParseError("millers: weight list must be nonempty")
        miller_weights = tuple(
            _positive_int(w, f"millers[{i}]") for i, w in enumerate(millers)
        )
    else:
        miller_weights = (1,) * _positive_int(millers, "millers")

    bakers_data = _require(data, "bakers", "document")
    if not isinstance(bakers_data, list) or not bakers_data:
        raise ParseError("bakers: expected a nonempty list")
    ranges = []
    baker_weights = []
    for i, entry in enumerate(bakers_data):
        context = f"bakers[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{context}: expected an object")
        rng = _require(entry, "range", context)
        if not isinstance(rng, list) or not rng:
            raise ParseError(f"{context}.range: expected a nonempty list of names")
        resolved = []
        for name in rng:
            if name not in index:
                raise ParseError(f"{context}.range: unknown location {name!r}")
            resolved.append(index[name])
        ranges.append(tuple(resolved))
        baker_weights.append(_positive_int(entry.get("weight", 1), f"{context}.weight"))

    instance = Instance(tuple(locations), len(miller_weights), tuple(ranges))
    weighted = any(w != 1 for w in baker_weights) or any(
        w != 1 for w in miller_weights
    )
    if weighted:
        return WeightedInstance(instance, tuple(baker_weights), miller_weights)
    return instance


def instance_to_data(obj) -> dict:
    if isinstance(obj, WeightedInstance):
        instance = obj.instance
        baker_weights = obj.baker_weights
        miller_weights = obj.miller_weights
    else:
        instance = obj
        baker_weights = (1,) * instance.num_bakers
        miller_weights = (1,) * instance.num_millers
    names = instance.locations
    bakers = []
    for rng, weight in zip(instance.bakers, baker_weights):
        entry: dict = {"range": [names[loc] for loc in rng]}
        if weight != 1:
            entry["weight"] = weight
        bakers.append(entry)
    millers = (
        list(miller_weights)
        if any(w != 1 for w in miller_weights)
        else len(miller_weights)
    )
    return {
        "version": SCHEMA_VERSION,
        "locations": list(names),
        "millers": millers,
        "bakers": bakers,
    }


def serialize_instance(obj) -> str:
    return json.dumps(instance_to_data(obj), indent=2) + "\n"


def instance_digest(obj) -> str:
    """Stable short identifier of the canonical serialization."""
    return hashlib.sha256(serialize_instance(obj).encode()).hexdigest()[:16]


def _base_instance(obj) -> Instance:
    return obj.instance if isinstance(obj, WeightedInstance) else obj


def parse_profile(text: str, obj) -> StrategyProfile:
    """Parse a profile document and validate it against the instance."""
    instance = _base_instance(obj)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("profile: expected an object at the top level")
    index = {name: i for i, name in enumerate(instance.locations)}

    def resolve(kind: str, expected: int) -> tuple[int, ...]:
        entries = _require(data, kind, "profile")
        if not isinstance(entries, list):
            raise ParseError(f"{kind}: expected a list of location names")
        if len(entries) != expected:
            raise ParseError(f"{kind}: expected {expected} entries, got {len(entries)}")
        out = []
        for i, name in enumerate(entries):
            if name not in index:
                raise ParseError(f"{kind}[{i}]: unknown location {name!r}")
            out.append(index[name])
        return tuple(out)

    bakers = resolve("bakers", instance.num_bakers)
    millers = resolve("millers", instance.num_millers)
    for b, loc in enumerate(bakers):
        if loc not in instance.bakers[b]:
            raise ParseError(
                f"bakers[{b}]: location {instance.locations[loc]!r} is outside the range"
            )
    return StrategyProfile(bakers, millers)


def serialize_profile(profile: StrategyProfile, obj) -> str:
    instance = _base_instance(obj)
    names = instance.locations
    data = {
        "bakers": [names[loc] for loc in profile.baker_locations],
        "millers": [names[loc] for loc in profile.miller_locations],
    }
    return json.dumps(data, indent=2) + "\n"


def parse_script(text: str, obj) -> tuple[ScriptedMove, ...]:
    instance = _base_instance(obj)
    index = {name: i for i, name in enumerate(instance.locations)}
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise ParseError(
                f"line {lineno}: expected 'kind origin target [weight]', got {raw!r}"
            )
        kind, origin, target = parts[:3]
        if kind not in ("baker", "miller"):
            raise ParseError(f"line {lineno}: unknown agent kind {kind!r}")
        for name in (origin, target):
            if name not in index:
                raise ParseError(f"line {lineno}: unknown location {name!r}")
        weight = None
        if len(parts) == 4:
            try:
                weight = int(parts[3])
            except ValueError:
                raise ParseError(f"line {lineno}: weight must be an integer") from None
            if weight < 1:
                raise ParseError(f"line {lineno}: weight must be positive")
        moves.append(ScriptedMove(kind, index[origin], index[target], weight))
    return tuple(moves)


def serialize_script(script, obj) -> str:
    instance = _base_instance(obj)
    names = instance.locations
    lines = []
    for mv in script:
        parts = [mv.kind, names[mv.origin], names[mv.target]]
        if mv.weight is not None:
            parts.append(str(mv.weight))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
