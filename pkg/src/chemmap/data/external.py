"""Optional client for an external compound-feature service.

Disabled unless a base URL is configured, so offline runs and tests
never touch the network. Failures are collected per compound; a batch
fetch never raises for individual misses.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

import httpx

from ..chem import DrugLikenessRecord
from ..chem.descriptors import compute_ro5

BASE_URL_ENV = "CHEMMAP_FEATURE_API"
_FIELDS = ("logp", "acidic_pka", "basic_pka", "qed")


@dataclass(frozen=True)
class FeatureUpdate:
    compound_id: str
    values: dict[str, float]
    provenance: str = "ingested"


@dataclass(frozen=True)
class FetchResult:
    updates: dict[str, FeatureUpdate] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)


def fetch_external_features(
    compound_ids: list[str] | tuple[str, ...],
    base_url: str | None = None,
    timeout: float = 10.0,
    transport: httpx.BaseTransport | None = None,
) -> FetchResult:
    """Fetch ingested-only drug-likeness fields for known compounds.

    The endpoint is taken from base_url or the CHEMMAP_FEATURE_API
    environment variable; with neither set the client is offline and
    returns an empty result. transport exists for test doubles.
    """
    base = base_url or os.environ.get(BASE_URL_ENV)
    if not base:
        return FetchResult()

    updates: dict[str, FeatureUpdate] = {}
    errors: dict[str, str] = {}
    with httpx.Client(base_url=base, timeout=timeout, transport=transport) as client:
        for cid in compound_ids:
            try:
                response = client.get(f"/compounds/{cid}/features")
                if response.status_code == 404:
                    errors[cid] = "unknown compound"
                    continue
                response.raise_for_status()
                payload = response.json()
                values = {
                    name: float(payload[name])
                    for name in _FIELDS
                    if payload.get(name) is not None
                }
                updates[cid] = FeatureUpdate(compound_id=cid, values=values)
            except httpx.HTTPError as exc:
                errors[cid] = str(exc)
            except (ValueError, TypeError) as exc:
                errors[cid] = f"bad payload: {exc}"
    return FetchResult(updates=updates, errors=errors)


def apply_feature_update(
    record: DrugLikenessRecord, update: FeatureUpdate
) -> DrugLikenessRecord:
    """Merge fetched fields into a record, re-deriving the Ro5 summary."""
    fields = {
        name: update.values.get(name, getattr(record, name)) for name in _FIELDS
    }
    ro5 = compute_ro5(
        record.molecular_weight,
        fields["logp"],
        record.h_bond_donors,
        record.h_bond_acceptors,
    )
    return replace(
        record,
        ro5_violations=ro5.violations,
        ro5_partial=ro5.partial,
        **fields,
    )
