"""HTTP/JSON façade over the analysis engines.

Every route lives under /v1. Responses are plain JSON view models; for
a fixed artifact directory the same request always serializes to the
same bytes, so clients may cache aggressively.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from typing import Callable, TypeVar

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from ..align import AlignError, align_compounds, graph_to_record, write_sdf
from ..data import DataError, session_from_document, session_to_document
from ..dr import ProjectorError, TsneError
from ..views import HexGrid, Selection, ViewError, bin_points, difference_view, lasso_select
from ..views import aggregate_bin as _aggregate_bin
from .compounds import project_new_compound, record_in_session, unique_compound_id
from .state import DatasetBundle, ServiceError, ServiceState
from .table import check_feature_known, group_by_hexagon, table_rows

ALIGN_TIMEOUT = 10.0  # seconds; alignment runs synchronously
ADD_COMPOUND_TIMEOUT = 6.0

_EXECUTOR = ThreadPoolExecutor(max_workers=4)
_T = TypeVar("_T")

_ENGINE_ERRORS = (ViewError, DataError, TsneError, ProjectorError, AlignError)


def _bounded(fn: Callable[[], _T], timeout: float, what: str) -> _T:
    future = _EXECUTOR.submit(fn)
    try:
        return future.result(timeout=timeout)
    except FutureTimeout:
        raise ServiceError(
            "timeout", f"{what} did not finish within {timeout:.0f} s", status=504
        ) from None


class SessionCreate(BaseModel):
    dataset: str


class SessionImport(BaseModel):
    document: dict


class SelectionBody(BaseModel):
    name: str
    ids: list[str] | None = None
    polygon: list[tuple[float, float]] | None = None
    representation: str | None = None
    provenance: str = "table"


class CompoundBody(BaseModel):
    smiles: str
    id: str | None = None


class AlignBody(BaseModel):
    ids: list[str]
    time_budget: float = 2.0
    cluster_radius: float = 0.5


def _trust_payload(trust) -> dict:
    return {
        "pearson": [float(v) for v in trust.pearson],
        "kendall": [float(v) for v in trust.kendall],
        "degenerate": [bool(v) for v in trust.degenerate],
    }


def _bin_payload(hexbin) -> dict:
    aggregate = hexbin.aggregate
    if isinstance(aggregate, (np.floating, np.integer)):
        aggregate = float(aggregate)
    return {
        "q": hexbin.q,
        "r": hexbin.r,
        "center": [float(hexbin.center[0]), float(hexbin.center[1])],
        "member_ids": list(hexbin.member_ids),
        "count": hexbin.count,
        "aggregate": aggregate,
        "mean_trust": None if hexbin.mean_trust is None else float(hexbin.mean_trust),
        "opacity": float(hexbin.opacity),
    }


def _selection_payload(selection: Selection) -> dict:
    return {
        "name": selection.name,
        "ids": sorted(selection.ids),
        "provenance": selection.provenance,
    }


def _resolve_selection(
    state: ServiceState,
    bundle: DatasetBundle,
    ids_param: str | None,
    session_id: str | None,
    name: str | None,
) -> Selection:
    """A selection arrives either inline (ids=) or by session reference."""
    if ids_param is not None:
        ids = frozenset(part for part in ids_param.split(",") if part)
        if not ids:
            raise ServiceError("bad-selection", "ids parameter is empty")
        return Selection(ids, provenance="table", name=None)
    if session_id is None or name is None:
        raise ServiceError(
            "bad-selection", "pass either ids or session and selection parameters"
        )
    session = state.session_for(session_id)
    if name not in session.selections:
        raise ServiceError(
            "unknown-selection", f"session has no selection named {name!r}", status=404
        )
    return session.selections[name]


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="chemmap", docs_url=None, redoc_url=None)

    @app.exception_handler(ServiceError)
    async def _service_error(_request: Request, exc: ServiceError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.exception_handler(ViewError)
    @app.exception_handler(DataError)
    @app.exception_handler(TsneError)
    @app.exception_handler(ProjectorError)
    @app.exception_handler(AlignError)
    async def _engine_error(_request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "engine-error", "message": str(exc)}},
        )

    @app.get("/v1/datasets")
    def list_datasets() -> list[dict]:
        payload = []
        for name in sorted(state.bundles):
            bundle = state.bundles[name]
            dataset = bundle.dataset
            targets = sorted({t for c in dataset.compounds for t in c.activities})
            payload.append(
                {
                    "name": name,
                    "compounds": dataset.n,
                    "representations": sorted(dataset.representations),
                    "projections": sorted(dataset.projections),
                    "projectors": sorted(bundle.projectors),
                    "targets": targets,
                    "conformers": len(dataset.conformers),
                    "artifact_version": bundle.artifact_version,
                }
            )
        return payload

    @app.get("/v1/datasets/{name}/projections/{tag}")
    def get_projection(name: str, tag: str) -> dict:
        bundle = state.bundle_for(name)
        projection = bundle.projection_for(tag)
        trust = bundle.dataset.trust.get(tag)
        return {
            "dataset": name,
            "representation": tag,
            "source": projection.source,
            "ids": list(projection.ids),
            "coords": [[float(x), float(y)] for x, y in projection.coords],
            "trust": None if trust is None else _trust_payload(trust),
            "artifact_version": bundle.artifact_version,
        }

    @app.get("/v1/datasets/{name}/bins")
    def get_bins(
        name: str, representation: str, radius: float, feature: str | None = None
    ) -> dict:
        bundle = state.bundle_for(name)
        projection = bundle.projection_for(representation)
        trust = bundle.dataset.trust.get(representation)
        bins = bin_points(projection, radius, trust=trust)
        if feature is not None:
            features = bundle.dataset.feature_map()
            check_feature_known(feature, features)
            bins = [_aggregate_bin(b, feature, features) for b in bins]
        return {
            "dataset": name,
            "representation": representation,
            "radius": radius,
            "feature": feature,
            "bins": [_bin_payload(b) for b in bins],
            "artifact_version": bundle.artifact_version,
        }

    @app.get("/v1/datasets/{name}/difference")
    def get_difference(
        name: str,
        refRepr: str,
        otherRepr: str,
        radius: float,
        ids: str | None = None,
        session: str | None = None,
        selection: str | None = None,
    ) -> dict:
        bundle = state.bundle_for(name)
        chosen = _resolve_selection(state, bundle, ids, session, selection)
        chosen.validate_against(bundle.dataset.ids)
        model = difference_view(
            chosen,
            bundle.projection_for(refRepr),
            bundle.projection_for(otherRepr),
            HexGrid(radius),
            bundle.trust_for(refRepr),
        )
        return {
            "dataset": name,
            "reference": model.reference_tag,
            "compared": model.compared_tag,
            "radius": radius,
            "outer_bins": [_bin_payload(b) for b in model.outer_bins],
            "inner_hexes": [
                {
                    "parent": [inner.parent[0], inner.parent[1]],
                    "center": [float(inner.center[0]), float(inner.center[1])],
                    "size": float(inner.size),
                    "member_ids": list(inner.member_ids),
                }
                for inner in model.inner_hexes
            ],
            "artifact_version": bundle.artifact_version,
        }

    @app.get("/v1/datasets/{name}/table")
    def get_table(
        name: str,
        request: Request,
        sort: str | None = None,
        descending: bool = False,
        group_by: str | None = None,
        representation: str | None = None,
        radius: float | None = None,
        feature: str | None = None,
        page: int = 0,
        page_size: int = 50,
    ) -> dict:
        bundle = state.bundle_for(name)
        filters = request.query_params.getlist("filter")
        if group_by is not None:
            if group_by != "hexagon":
                raise ServiceError("bad-request", "group_by supports only 'hexagon'")
            if representation is None or radius is None or feature is None:
                raise ServiceError(
                    "bad-request",
                    "group_by=hexagon needs representation, radius and feature",
                )
            groups = group_by_hexagon(
                bundle.dataset,
                bundle.projection_for(representation),
                radius,
                feature,
                trust=bundle.dataset.trust.get(representation),
                filters=filters,
            )
            return {
                "dataset": name,
                "group_by": "hexagon",
                "representation": representation,
                "radius": radius,
                "groups": groups,
                "artifact_version": bundle.artifact_version,
            }
        rows = table_rows(bundle.dataset, filters, sort, descending)
        if page < 0 or page_size < 1:
            raise ServiceError("bad-request", "page must be >= 0 and page_size >= 1")
        start = page * page_size
        return {
            "dataset": name,
            "total": len(rows),
            "page": page,
            "page_size": page_size,
            "rows": rows[start : start + page_size],
            "artifact_version": bundle.artifact_version,
        }

    @app.post("/v1/datasets/{name}/align")
    def post_align(name: str, body: AlignBody) -> dict:
        bundle = state.bundle_for(name)
        dataset = bundle.dataset
        missing = sorted(set(body.ids) - set(dataset.conformers))
        if missing:
            raise ServiceError(
                "missing-conformer",
                "no conformer for: " + ", ".join(missing[:10]),
            )
        graphs = [dataset.conformer_graphs[cid] for cid in body.ids]
        conformers = [dataset.conformers[cid] for cid in body.ids]
        result = _bounded(
            lambda: align_compounds(
                graphs,
                conformers,
                time_budget=body.time_budget,
                cluster_radius=body.cluster_radius,
            ),
            ALIGN_TIMEOUT,
            "alignment",
        )
        template = result.mcs.template
        return {
            "dataset": name,
            "reference_id": result.reference_id,
            "template": {
                "elements": [atom.element for atom in template.atoms],
                "bonds": [[b.a, b.b, b.order] for b in template.bonds],
                "exact": result.mcs.exact,
                "rings_split": result.mcs.rings_split,
            },
            "compounds": [
                {
                    "id": comp.compound_id,
                    "elements": [atom.element for atom in graphs[k].atoms],
                    "bonds": [[b.a, b.b, b.order] for b in graphs[k].bonds],
                    "rotation": comp.rotation.tolist(),
                    "translation": comp.translation.tolist(),
                    "rmsd": float(comp.rmsd),
                    "positions": comp.positions.tolist(),
                    "core_atoms": result.mcs.atoms_for(k),
                    "occurrence": comp.occurrence.tolist(),
                    "atom_opacity": comp.atom_opacity.tolist(),
                    "bond_opacity": comp.bond_opacity.tolist(),
                }
                for k, comp in enumerate(result.compounds)
            ],
        }

    @app.get("/v1/datasets/{name}/export")
    def export_sdf(name: str, ids: str) -> PlainTextResponse:
        bundle = state.bundle_for(name)
        dataset = bundle.dataset
        wanted = [part for part in ids.split(",") if part]
        if not wanted:
            raise ServiceError("bad-request", "ids parameter is empty")
        missing = sorted(set(wanted) - set(dataset.conformers))
        if missing:
            raise ServiceError(
                "missing-conformer", "no conformer for: " + ", ".join(missing[:10])
            )
        records = []
        for cid in wanted:
            compound = dataset.compound_for(cid)
            properties = {"smiles": compound.smiles}
            for target, label in sorted(compound.activities.items()):
                properties[f"activity.{target}"] = label
            records.append(
                graph_to_record(
                    cid,
                    dataset.conformer_graphs[cid],
                    dataset.conformers[cid],
                    properties=properties,
                )
            )
        return PlainTextResponse(write_sdf(records), media_type="chemical/x-mdl-sdfile")

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: SessionCreate) -> dict:
        state.bundle_for(body.dataset)  # existence check
        session_id = state.create_session(body.dataset)
        return {"session_id": session_id, "dataset": body.dataset}

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        session = state.session_for(session_id)
        return {"session_id": session_id, **session_to_document(session)}

    @app.post("/v1/sessions/import", status_code=201)
    def import_session(body: SessionImport) -> dict:
        try:
            session = session_from_document(body.document, set(state.bundles))
        except DataError as exc:
            raise ServiceError("bad-session", str(exc)) from exc
        session_id = state.adopt_session(session)
        return {"session_id": session_id, "dataset": session.dataset_name}

    @app.post("/v1/sessions/{session_id}/selections", status_code=201)
    def post_selection(session_id: str, body: SelectionBody) -> dict:
        session = state.session_for(session_id)
        bundle = state.bundle_for(session.dataset_name)
        if (body.ids is None) == (body.polygon is None):
            raise ServiceError(
                "bad-selection", "pass exactly one of ids or polygon"
            )
        if body.polygon is not None:
            if body.representation is None:
                raise ServiceError(
                    "bad-selection", "polygon selection needs a representation"
                )
            projection = bundle.projection_for(body.representation)
            chosen = lasso_select(projection, body.polygon, name=body.name)
        else:
            chosen = Selection(
                frozenset(body.ids), provenance=body.provenance, name=body.name
            )
            known = set(bundle.dataset.ids) | {
                a.compound_id for a in session.added
            }
            chosen.validate_against(known)
        with state.session_lock(session_id):
            session.selections[body.name] = chosen
        return _selection_payload(chosen)

    @app.get("/v1/sessions/{session_id}/selections/{name}")
    def get_selection(session_id: str, name: str) -> dict:
        session = state.session_for(session_id)
        if name not in session.selections:
            raise ServiceError(
                "unknown-selection",
                f"session has no selection named {name!r}",
                status=404,
            )
        return _selection_payload(session.selections[name])

    @app.post("/v1/sessions/{session_id}/compounds", status_code=201)
    def post_compound(session_id: str, body: CompoundBody) -> dict:
        session = state.session_for(session_id)
        bundle = state.bundle_for(session.dataset_name)
        with state.session_lock(session_id):
            compound_id = unique_compound_id(bundle, session, body.id)
            compound = _bounded(
                lambda: project_new_compound(bundle, body.smiles, compound_id),
                ADD_COMPOUND_TIMEOUT,
                "add-compound",
            )
            record_in_session(session, compound)
        return {
            "id": compound.compound_id,
            "smiles": compound.smiles,
            "highlight": compound.highlight,
            "coords": {
                tag: None if xy is None else [xy[0], xy[1]]
                for tag, xy in sorted(compound.coords.items())
            },
            "unavailable": compound.unavailable,
            "descriptors": compound.descriptors,
            "fingerprints": compound.fingerprints,
        }

    return app
