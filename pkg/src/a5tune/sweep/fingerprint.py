# Copyright 2025 Christophe Roeder. All rights reserved.

"""Deterministic scenario fingerprints using SHA256 hashing."""

import hashlib
import json
from dataclasses import asdict
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .models import Scenario

FINGERPRINT_VERSION = 1


def fingerprint_payload(scenario: "Scenario") -> dict[str, Any]:
    """Every scenario input that influences a run, excluding the COP."""
    return {
        "version": FINGERPRINT_VERSION,
        "network": asdict(scenario.network),
        "mobility": asdict(scenario.mobility),
        "events": scenario.events.constants(),
        "simulation": asdict(scenario.simulation),
    }


def _canonical(value: Any) -> Any:
    """Integral floats become ints so 1000 and 1000.0 hash alike."""
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    return value


def hash_payload(payload: Any) -> str:
    """
    SHA256 of the canonical JSON form of a payload.

    Args:
        payload: JSON-serializable value

    Returns:
        Lowercase hex digest
    """
    canonical = json.dumps(
        _canonical(payload), sort_keys=True, separators=(",", ":")
    )
    h = hashlib.sha256()
    h.update(canonical.encode("utf-8"))
    return h.hexdigest()


def scenario_fingerprint(scenario: "Scenario") -> str:
    """Create the fingerprint shared by every row of a sweep dataset."""
    return hash_payload(fingerprint_payload(scenario))
