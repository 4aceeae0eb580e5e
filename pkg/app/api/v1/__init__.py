"""API v1 router."""
from fastapi import APIRouter
from app.api.v1 import algebra, health

router = APIRouter(prefix="/v1")

router.include_router(algebra.router)
router.include_router(health.router)
