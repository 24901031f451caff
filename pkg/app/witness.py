import logging
from http import HTTPStatus
from typing import Literal

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, PositiveInt
from starlette.responses import Response

from settings import service_config
from utils import decider
from utils.bigraph import serialize, to_dot
from utils.certificates import Outcome, verdict_witness
from utils.errors import TripleError
from utils.triple import Triple

# Set up logger
logger = logging.getLogger(__name__)

router = APIRouter()


class WitnessRequest(BaseModel):
    a: PositiveInt
    b: PositiveInt
    c: PositiveInt
    format: Literal["bigraph", "dot"] = "bigraph"


@router.post("/")
def get_witness(request: WitnessRequest) -> Response:
    """Return an edge-transitive witness graph as bigraph text or DOT."""
    logger.info(f"Received request for a witness of ({request.a}, {request.b}, {request.c})")
    config = service_config()
    try:
        verdict = decider.decide(Triple.of(request.a, request.b, request.c), config)
        if verdict.outcome is not Outcome.REALIZABLE:
            logger.warning(f"No witness for {verdict.triple}: {verdict.outcome.value}")
            raise HTTPException(
                status_code=HTTPStatus.UNPROCESSABLE_ENTITY,
                detail=f"{verdict.triple} is {verdict.outcome.value}; there is no witness"
            )
        graph = verdict_witness(verdict, config.group_cap)
    except HTTPException:
        # Re-raise HTTP exceptions
        raise
    except TripleError as e:
        logger.error(f"Failed to build witness: {str(e)}")
        raise HTTPException(status_code=HTTPStatus.BAD_REQUEST, detail=str(e))
    except Exception as e:
        logger.exception(f"Unexpected error building witness: {str(e)}")
        raise HTTPException(
            status_code=HTTPStatus.INTERNAL_SERVER_ERROR,
            detail=f"Error building witness: {str(e)}"
        )
    logger.debug(f"Witness has {graph.edge_count} edges")
    content = to_dot(graph) if request.format == "dot" else serialize(graph)
    return Response(content=content, media_type="text/plain", status_code=HTTPStatus.OK)
