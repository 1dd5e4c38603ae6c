"""Cost report and calibration endpoints."""

import asyncio
import json

from fastapi import APIRouter, HTTPException, status

from app.api.models import CostRequest, ErrorResponse
from app.cost.calibration import dump_calibration, get_calibration
from app.cost.models import Corner
from app.cost.report import report, report_to_json
from app.errors import MTLError
from app.netlist.io import from_document

router = APIRouter(prefix="/api", tags=["cost"])


def _cost(request: CostRequest) -> dict:
    netlist = from_document(request.netlist)
    document = report_to_json(report(netlist, request.family))
    if request.corner is not None:
        corner = Corner(request.corner).value
        document["delay_ns"] = {corner: document["delay_ns"][corner]}
    return document


@router.post("/cost", responses={400: {"model": ErrorResponse}})
async def cost(request: CostRequest) -> dict:
    """Cost report with SI-formatted power, leakage and energy."""
    try:
        return await asyncio.to_thread(_cost, request)
    except (MTLError, ValueError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e)) from e
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Failed to compute cost report: {str(e)}",
        ) from e


@router.get("/calibration")
async def calibration() -> dict:
    """Active calibration table."""
    try:
        return json.loads(dump_calibration(get_calibration()))
    except MTLError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e)) from e
