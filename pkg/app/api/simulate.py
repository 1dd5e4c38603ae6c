"""Boolean, analog and Monte Carlo simulation endpoints."""

import asyncio

import numpy as np
from fastapi import APIRouter, HTTPException, status

from app.api.models import (
    AnalogRequest,
    AnalogResponse,
    ErrorResponse,
    MonteCarloRequest,
    SimulateRequest,
    SimulateResponse,
)
from app.cell.tlcell import truth_rows
from app.errors import MTLError, WidthMismatch
from app.netlist.io import from_document
from app.netlist.models import VariabilitySpec
from app.netlist.simulate import MonteCarloResult, monte_carlo, simulate, simulate_analog

router = APIRouter(prefix="/api", tags=["simulate"])

MAX_ENUMERATED_INPUTS = 16


def _simulate(request: SimulateRequest) -> SimulateResponse:
    netlist = from_document(request.netlist)
    rows = simulate(netlist, request.vectors)
    return SimulateResponse(outputs=list(netlist.outputs), rows=rows.tolist())


def _analog(request: AnalogRequest) -> AnalogResponse:
    netlist = from_document(request.netlist)
    spec = VariabilitySpec(**request.variability.model_dump())
    result = simulate_analog(netlist, request.rows, spec=spec, trial=request.trial)
    return AnalogResponse(
        outputs=list(netlist.outputs),
        volts=result.volts.tolist(),
        logic=result.logic.tolist(),
    )


def _monte_carlo(request: MonteCarloRequest) -> MonteCarloResult:
    netlist = from_document(request.netlist)
    spec = VariabilitySpec(
        input_noise=request.noise,
        mem_tolerance=request.mem_tol,
        vth_shift=request.vth_shift,
        seed=request.seed,
    )
    if request.vectors is not None:
        vectors = np.asarray(request.vectors, dtype=np.uint8)
    elif len(netlist.inputs) <= MAX_ENUMERATED_INPUTS:
        vectors = truth_rows(len(netlist.inputs))
    else:
        raise WidthMismatch(
            f"{len(netlist.inputs)} inputs are too many to enumerate; pass reference vectors"
        )
    return monte_carlo(netlist, spec, request.trials, vectors)


async def _run(func, request, action: str):
    try:
        return await asyncio.to_thread(func, request)
    except MTLError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e)) from e
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Failed to {action}: {str(e)}",
        ) from e


@router.post(
    "/simulate", response_model=SimulateResponse, responses={400: {"model": ErrorResponse}}
)
async def simulate_vectors(request: SimulateRequest) -> SimulateResponse:
    """Output bit rows for the given input bit rows."""
    return await _run(_simulate, request, "simulate netlist")


@router.post(
    "/simulate/analog", response_model=AnalogResponse, responses={400: {"model": ErrorResponse}}
)
async def simulate_voltages(request: AnalogRequest) -> AnalogResponse:
    """Output voltages of one variability trial."""
    return await _run(_analog, request, "run analog simulation")


@router.post("/mc", response_model=MonteCarloResult, responses={400: {"model": ErrorResponse}})
async def run_monte_carlo(request: MonteCarloRequest) -> MonteCarloResult:
    """Error rate over seeded variability trials."""
    return await _run(_monte_carlo, request, "run Monte Carlo")
