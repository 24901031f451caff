import logging
from http import HTTPStatus

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, PositiveInt
from starlette.responses import Response

from settings import service_config
from utils import decider
from utils.errors import TripleError
from utils.triple import Triple

# Set up logger
logger = logging.getLogger(__name__)

router = APIRouter()


class DecideRequest(BaseModel):
    a: PositiveInt
    b: PositiveInt
    c: PositiveInt
    oracle: bool = True
    oracle_max_candidates: PositiveInt | None = None
    search_budget: PositiveInt | None = None


"""
Because of the router, every endpoint in this file is prefixed with /decide/
"""


@router.post("/")
def decide_triple(request: DecideRequest) -> Response:
    """Decide one triple and return the verdict document the CLI prints with --json."""
    logger.info(f"Received request to decide ({request.a}, {request.b}, {request.c})")
    config = service_config(
        oracle_enabled=request.oracle,
        oracle_max_candidates=request.oracle_max_candidates,
        search_budget=request.search_budget,
    )
    try:
        verdict = decider.decide(Triple.of(request.a, request.b, request.c), config)
    except TripleError as e:
        logger.error(f"Failed to decide ({request.a}, {request.b}, {request.c}): {str(e)}")
        raise HTTPException(status_code=HTTPStatus.BAD_REQUEST, detail=str(e))
    except Exception as e:
        logger.exception(f"Unexpected error deciding ({request.a}, {request.b}, {request.c}): {str(e)}")
        raise HTTPException(
            status_code=HTTPStatus.INTERNAL_SERVER_ERROR,
            detail=f"Error deciding triple: {str(e)}"
        )
    logger.info(f"Verdict for {verdict.triple}: {verdict.outcome.value}")
    return Response(
        content=verdict.model_dump_json(),
        media_type="application/json",
        status_code=HTTPStatus.OK,
    )
