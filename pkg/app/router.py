from fastapi import APIRouter

import classify
import decide
import graphs
import verify
import witness
router = APIRouter()

router.include_router(decide.router, prefix="/decide", tags=["decide"])
router.include_router(witness.router, prefix="/witness", tags=["witness"])
router.include_router(classify.router, prefix="/classify", tags=["classify"])
router.include_router(verify.router, prefix="/verify", tags=["verify"])
router.include_router(graphs.router, prefix="/graphs", tags=["graphs"])
