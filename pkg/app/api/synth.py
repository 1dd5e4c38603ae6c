"""Netlist generation endpoint."""

import asyncio

from fastapi import APIRouter, HTTPException, status

from app.api.models import ErrorResponse, NetlistSummary, SynthRequest, SynthResponse
from app.cost.report import report
from app.errors import MTLError
from app.netlist.io import to_document
from app.synth.targets import build_target

router = APIRouter(prefix="/api/synth", tags=["synth"])


def _synthesize(target: str) -> SynthResponse:
    netlist = build_target(target)
    mtl = report(netlist, "MTL")
    return SynthResponse(
        netlist=to_document(netlist),
        summary=NetlistSummary(
            cells=netlist.cell_count,
            depth=mtl.depth,
            inputs=len(netlist.inputs),
            outputs=len(netlist.outputs),
            transistors_mtl=mtl.transistor_count,
        ),
    )


@router.post("", response_model=SynthResponse, responses={400: {"model": ErrorResponse}})
async def synthesize(request: SynthRequest) -> SynthResponse:
    """Generate the netlist named by ``request.target``."""
    try:
        return await asyncio.to_thread(_synthesize, request.target)
    except MTLError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e)) from e
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Failed to synthesize netlist: {str(e)}",
        ) from e
