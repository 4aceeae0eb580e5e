"""Algebra endpoints mirroring the CLI subcommands."""
import logging
from typing import Callable, TypeVar

from fastapi import APIRouter, HTTPException, Query

from app.core.errors import WorkbenchError
from app.core.metrics import track_run
from app.schemas.reports import (
    NormalizeReport,
    ProductReport,
    StildeReport,
    VerificationReport,
    WittReport,
)
from app.schemas.requests import NormalizeRequest, ProductRequest, VerifyRequest, WittRequest
from app.services.verification import run_suite
from app.services.workbench import normalize_expression, product_report, stilde_report, witt_invariants

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/algebra", tags=["algebra"])

T = TypeVar("T")


def _run(command: str, fn: Callable[..., T], *args, **kwargs) -> T:
    """Run a service call, mapping workbench errors to their HTTP status."""
    with track_run(f"api {command}") as collector:
        try:
            return fn(*args, **kwargs)
        except WorkbenchError as e:
            collector.record_checks(0, 1)
            logger.error(f"AlgebraAPI: {command} failed: {e.message}", exc_info=True)
            raise HTTPException(status_code=e.http_status, detail=e.message)


# Handlers are sync: FastAPI runs them in its thread pool.

@router.post("/normalize", response_model=NormalizeReport)
def normalize(request: NormalizeRequest):
    """Normal form of an expression."""
    return _run(
        "normalize",
        normalize_expression,
        request.expression,
        request.field,
        request.bindings,
        request.check_model,
    )


@router.post("/witt", response_model=WittReport)
def witt(request: WittRequest):
    """Invariants and Witt class of a diagonal form."""
    return _run("witt", witt_invariants, request.form, request.field)


@router.post("/verify", response_model=VerificationReport)
def verify(request: VerifyRequest):
    """Run a verification suite."""
    return _run(
        "verify",
        run_suite,
        request.suite,
        field=request.field,
        trials=request.trials,
        seed=request.seed,
    )


@router.get("/stilde", response_model=StildeReport)
def stilde(
    p: int = Query(..., description="Odd prime"),
    n: int = Query(..., ge=1, description="Dimension"),
    compare: bool = Query(False, description="Also run the direct pipeline"),
):
    """Presented model of S̃(F_p^n)."""
    return _run("stilde", stilde_report, p, n, compare)


@router.post("/product", response_model=ProductReport)
def product(request: ProductRequest):
    """x∗y by both evaluation paths."""
    return _run("product", product_report, request.left, request.right, request.field)
