"""HTTP front end: POST /score and GET /health.

The service wraps one scorer instance and handles requests serially
per instance; each request is scored exactly like the batch CLI path.
Malformed requests map to 4xx, scoring failures to 5xx.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .config import ScorerConfig
from .scoring import SentenceScorer

__all__ = ["ScoreRequest", "create_app"]


class ScoreRequest(BaseModel):
    sentences: list[str]


def create_app(
    config: ScorerConfig | None = None, *, scorer: SentenceScorer | None = None
) -> FastAPI:
    if scorer is None:
        scorer = SentenceScorer(config)
    app = FastAPI(title="lmscore")
    # Sync endpoints run in a thread pool; the lock keeps scoring serial
    # on the shared model instance.
    score_lock = threading.Lock()

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "model": scorer.config.model}

    @app.post("/score")
    def score(request: ScoreRequest) -> dict:
        if not request.sentences:
            raise HTTPException(status_code=400, detail="sentences must be non-empty")
        try:
            with score_lock:
                return scorer.score_document(request.sentences)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except Exception as exc:
            raise HTTPException(status_code=500, detail=f"scoring failed: {exc}") from exc

    return app
