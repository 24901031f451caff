import json
import logging
from http import HTTPStatus

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel
from starlette.responses import Response

from settings import service_config
from utils.autgraph import aut_order, canonical_certificate, edge_orbits
from utils.bigraph import BiGraph, complement, parse, serialize
from utils.errors import TripleError

# Set up logger
logger = logging.getLogger(__name__)

router = APIRouter()


class GraphRequest(BaseModel):
    """A graph in the bigraph text format."""

    graph: str


def _parse(request: GraphRequest) -> BiGraph:
    try:
        return parse(request.graph)
    except TripleError as e:
        logger.error(f"Failed to parse graph: {str(e)}")
        raise HTTPException(status_code=HTTPStatus.BAD_REQUEST, detail=str(e))


def _json(payload: dict) -> Response:
    return Response(content=json.dumps(payload), media_type="application/json", status_code=HTTPStatus.OK)


@router.post("/aut")
def automorphisms(request: GraphRequest) -> Response:
    graph = _parse(request)
    config = service_config()
    logger.info(f"Computing automorphisms of a {graph.a}x{graph.b} graph")
    try:
        order = aut_order(graph, config.search_budget, config.group_cap)
        orbits = len(edge_orbits(graph, config.search_budget))
    except TripleError as e:
        logger.error(f"Automorphism search failed: {str(e)}")
        raise HTTPException(status_code=HTTPStatus.BAD_REQUEST, detail=str(e))
    return _json({"aut_order": order, "edge_orbits": orbits})


@router.post("/canon")
def canonical(request: GraphRequest) -> Response:
    graph = _parse(request)
    try:
        digest = canonical_certificate(graph, service_config().search_budget).digest()
    except TripleError as e:
        logger.error(f"Canonical labeling failed: {str(e)}")
        raise HTTPException(status_code=HTTPStatus.BAD_REQUEST, detail=str(e))
    return _json({"digest": digest})


@router.post("/complement")
def complement_graph(request: GraphRequest) -> Response:
    return _json({"graph": serialize(complement(_parse(request)))})
