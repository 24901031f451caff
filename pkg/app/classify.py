import json
import logging
from http import HTTPStatus

from fastapi import APIRouter, HTTPException
from starlette.responses import Response

import settings
from utils import decider
from utils.certificates import outcome_counts

# Set up logger
logger = logging.getLogger(__name__)

router = APIRouter()


@router.get("/")
def classify_box(a_max: int = 5, b_max: int = 5, oracle: bool = True) -> Response:
    """Decide every triple with a <= a_max, b <= b_max and lcm(a, b) | c <= ab."""
    logger.info(f"Received request to classify a <= {a_max}, b <= {b_max}")
    limit = settings.classify_max_side
    if not (1 <= a_max <= limit and 1 <= b_max <= limit):
        logger.error(f"Classification box {a_max}x{b_max} outside 1..{limit}")
        raise HTTPException(
            status_code=HTTPStatus.BAD_REQUEST,
            detail=f"a_max and b_max must lie in 1..{limit}"
        )
    try:
        verdicts = decider.classify(a_max, b_max, settings.service_config(oracle_enabled=oracle))
    except Exception as e:
        logger.exception(f"Unexpected error classifying: {str(e)}")
        raise HTTPException(
            status_code=HTTPStatus.INTERNAL_SERVER_ERROR,
            detail=f"Error classifying: {str(e)}"
        )
    counts = outcome_counts(verdicts)
    logger.info(f"Classified {len(verdicts)} triples: {counts}")
    return Response(
        content=json.dumps({"rows": [v.model_dump(mode="json") for v in verdicts], "counts": counts}),
        media_type="application/json",
        status_code=HTTPStatus.OK,
    )
