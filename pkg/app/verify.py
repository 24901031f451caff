import json
import logging
from http import HTTPStatus

from fastapi import APIRouter, HTTPException
from starlette.responses import Response

from settings import service_config
from utils.certificates import Verdict, verify_verdict
from utils.errors import CertificateError

# Set up logger
logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/")
def verify(verdict: Verdict) -> Response:
    """Replay a verdict; an invalid certificate is a valid answer, not a request error."""
    logger.info(f"Received request to verify {verdict.outcome.value} verdict for {verdict.triple}")
    try:
        verify_verdict(verdict, service_config())
    except CertificateError as e:
        logger.warning(f"Certificate for {verdict.triple} rejected: {str(e)}")
        return Response(
            content=json.dumps({"valid": False, "detail": str(e)}),
            media_type="application/json",
            status_code=HTTPStatus.OK,
        )
    except Exception as e:
        logger.exception(f"Unexpected error verifying {verdict.triple}: {str(e)}")
        raise HTTPException(
            status_code=HTTPStatus.INTERNAL_SERVER_ERROR,
            detail=f"Error verifying certificate: {str(e)}"
        )
    return Response(
        content=json.dumps({"valid": True, "detail": ""}),
        media_type="application/json",
        status_code=HTTPStatus.OK,
    )
