from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware as FastAPICORSMiddleware

from app.api.v1 import router as v1_router
from app.core.config import settings
from app.core.logging import configure_logging
from app.core.middleware import LoggingMiddleware

configure_logging()

app = FastAPI(
    title="Milnor-Witt Workbench",
    description="Exact computations with Grothendieck-Witt rings, Milnor and Milnor-Witt K-theory "
    "and general-position complexes over F_p and Q",
    version="1.0.0",
)

app.add_middleware(LoggingMiddleware)
app.add_middleware(
    FastAPICORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(v1_router)


@app.get("/")
async def root():
    return {
        "message": "Milnor-Witt Workbench API",
        "environment": settings.ENVIRONMENT,
        "docs": "/docs",
        "health": "/v1/health/",
    }
