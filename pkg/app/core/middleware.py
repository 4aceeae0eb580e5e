"""Request logging for the API."""
import logging
import time
from uuid import uuid4

from fastapi import Request
from starlette.middleware.base import BaseHTTPMiddleware

logger = logging.getLogger(__name__)


class LoggingMiddleware(BaseHTTPMiddleware):
    """Log each request with an id, its status and its duration."""

    async def dispatch(self, request: Request, call_next):
        request_id = request.headers.get("X-Request-ID") or uuid4().hex[:12]
        start = time.perf_counter()
        client = request.client.host if request.client else "unknown"
        logger.info(f"RequestLog: [{request_id}] {request.method} {request.url.path} from {client}")

        response = await call_next(request)

        elapsed = time.perf_counter() - start
        # 4xx responses are ordinary input errors
        level = logging.ERROR if response.status_code >= 500 else logging.INFO
        logger.log(level, f"RequestLog: [{request_id}] {response.status_code} in {elapsed:.4f}s")

        response.headers["X-Process-Time"] = str(elapsed)
        response.headers["X-Request-ID"] = request_id
        return response
