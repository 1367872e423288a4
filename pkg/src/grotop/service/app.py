"""FastAPI service wrapping the library; one endpoint per operation.

Library errors map to HTTP 400 with a `{"kind", "message"}` detail; budget
exhaustion keeps its own kind so thin clients can distinguish it from bad
input.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import counting, dcpo, patch, sieves
from ..errors import GrotopError, ParseError, TooLarge
from ..families import (
    PointSetPresentation,
    family_selectors,
    get_family,
)
from ..posets import bits, poset_to_json
from . import models

SERVICE_GT_SIZE_LIMIT = 6


def create_app() -> FastAPI:
    app = FastAPI(
        title="grotop",
        description="Grothendieck topologies on posets: enumeration, subset "
        "correspondence, closures, convergence, spectrality, counting tables.",
        version="0.1.0",
    )

    @app.exception_handler(GrotopError)
    async def _grotop_error(_: Request, exc: GrotopError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": {"kind": type(exc).__name__, "message": str(exc)}},
        )

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/v1/parse", response_model=models.ParseResponse)
    def parse(req: models.ParseRequest) -> models.ParseResponse:
        poset = req.poset.to_poset()
        relations = [
            (poset.elements[i], poset.elements[j])
            for i in range(poset.n)
            for j in bits(poset.up[i])
            if i != j
        ]
        return models.ParseResponse(
            elements=list(poset.elements),
            relations=relations,
            poset=poset_to_json(poset),
        )

    @app.post("/v1/topologies", response_model=models.TopologiesResponse)
    def topologies(req: models.TopologiesRequest) -> models.TopologiesResponse:
        poset = req.poset.to_poset()
        if poset.n > SERVICE_GT_SIZE_LIMIT:
            raise TooLarge(
                f"exhaustive enumeration serves posets up to "
                f"{SERVICE_GT_SIZE_LIMIT} elements; got {poset.n}"
            )
        found = sieves.enumerate_topologies(poset, limit=req.limit)
        return models.TopologiesResponse(
            count=len(found), topologies=[t.to_json() for t in found]
        )

    @app.post("/v1/correspond", response_model=models.CorrespondResponse)
    def correspond(req: models.CorrespondRequest) -> models.CorrespondResponse:
        poset = req.poset.to_poset()
        if req.subset is not None:
            points = sieves.point_set_from_json(poset, req.subset)
            topology = sieves.topology_from_points(poset, points)
            back = sieves.points_of_topology(topology)
            return models.CorrespondResponse(
                topology=topology.to_json(),
                points=sieves.point_set_to_json(back),
                round_trip=models.RoundTrip(
                    kind="subset", equal=back.mask == points.mask
                ),
            )
        topology = sieves.GrothendieckTopology.from_json(poset, req.topology)
        report = sieves.check_topology_axioms(poset, topology)
        if not report.ok:
            raise ParseError(
                f"not a Grothendieck topology: {report.axiom} fails at "
                f"{report.witness}"
            )
        points = sieves.points_of_topology(topology)
        back = sieves.topology_from_points(poset, points)
        return models.CorrespondResponse(
            topology=back.to_json(),
            points=sieves.point_set_to_json(points),
            round_trip=models.RoundTrip(kind="topology", equal=back == topology),
        )

    @app.post("/v1/closure", response_model=models.ClosureResponse)
    def closure(req: models.ClosureRequest) -> models.ClosureResponse:
        if req.subject.poset is not None:
            poset = req.subject.poset.to_poset()
            if req.sequence is not None:
                raise ParseError("sequence-described sets need a family subject")
            x = dcpo.filter_completion(poset)
            subset = sieves.point_set_from_json(x.x_poset, req.points)
            op = {
                "scott": patch.scott_set_closure,
                "patch": patch.patch_closure,
                "strong": patch.strong_closure,
            }[req.kind]
            closed = op(x, subset)
            extra = closed - subset
            return models.ClosureResponse(
                kind=req.kind,
                points=sieves.point_set_to_json(closed),
                added=sieves.point_set_to_json(extra),
                outcome="grew" if len(extra) else "closed",
            )
        family = get_family(req.subject.family)
        rule = family.parse_rule(req.sequence) if req.sequence else None
        presentation = PointSetPresentation(
            points=tuple(family.parse_point(p) for p in req.points),
            rule=rule,
        )
        candidates = [family.parse_point(c) for c in req.candidates]
        op = {
            "scott": patch.family_scott_closure,
            "patch": patch.family_patch_closure,
            "strong": patch.family_strong_closure,
        }[req.kind]
        result = op(family, presentation, candidates, req.budget)
        return models.ClosureResponse(
            kind=req.kind,
            points=list(result.members) + list(result.added),
            added=list(result.added),
            outcome=result.outcome,
            checked_level=result.checked_level,
            notes=list(result.notes),
        )

    @app.post("/v1/converge", response_model=models.ConvergeResponse)
    def converge(req: models.ConvergeRequest) -> models.ConvergeResponse:
        family = get_family(req.family)
        rule = family.parse_rule(req.seq)
        limit = family.parse_point(req.limit)
        if req.test_elements is not None:
            tests = [family.parse_element(e) for e in req.test_elements]
        else:
            tests = family.separating(min(req.budget, 16) or 1)
        verdict = patch.converges_pointwise(family, rule, limit, tests, req.budget)
        return models.ConvergeResponse(
            outcome=verdict.outcome,
            stabilization=verdict.stabilization,
            diverges_at=verdict.diverges_at,
            reason=verdict.reason,
            exact=verdict.exact,
            budget=verdict.budget,
        )

    @app.post("/v1/spectral", response_model=models.SpectralResponse)
    def spectral(req: models.SpectralRequest) -> models.SpectralResponse:
        subject = (
            req.subject.poset.to_poset()
            if req.subject.poset is not None
            else get_family(req.subject.family)
        )
        verdict = dcpo.is_spectral(subject, levels=req.levels)
        return models.SpectralResponse(
            outcome=verdict.outcome,
            dominating=list(verdict.dominating),
            escape_prefix=list(verdict.escape_prefix),
            checked_level=verdict.checked_level,
            detail=verdict.detail,
        )

    @app.post("/v1/count", response_model=models.CountResponse, response_model_by_alias=True)
    def count(req: models.CountRequest) -> models.CountResponse:
        poset = req.poset.to_poset()
        report = counting.count_report(poset, gt_mode=req.gt_mode)
        verdict = counting.verify_inequalities(report)
        return models.CountResponse(
            schema=report.schema,
            poset=report.poset,
            x=report.x,
            cl=report.cl,
            coh=report.coh,
            ep=report.ep,
            gt=report.gt,
            methods=report.methods,
            not_computed=report.not_computed,
            gt_cross_check=report.gt_cross_check,
            inequalities=models.InequalitiesModel(
                ok=verdict.ok,
                checks=[
                    models.InequalityCheck(name=n, lhs=a, rhs=b, ok=ok)
                    for n, a, b, ok in verdict.checks
                ],
                skipped=list(verdict.skipped),
            ),
        )

    @app.get("/v1/catalog", response_model=models.CatalogResponse)
    def catalog() -> models.CatalogResponse:
        return models.CatalogResponse(
            families=[
                models.FamilyInfo(selector=s, description=d)
                for s, d in family_selectors()
            ]
        )

    @app.post("/v1/catalog/truncate", response_model=models.TruncateResponse)
    def truncate(req: models.TruncateRequest) -> models.TruncateResponse:
        family = get_family(req.family)
        poset = family.truncate(req.level)
        return models.TruncateResponse(
            poset=poset_to_json(poset), elements=list(poset.elements)
        )

    return app
