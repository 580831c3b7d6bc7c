"""HTTP service exposing preprocessed artifacts to the browser frontend."""

from __future__ import annotations

import socket
from pathlib import Path

import numpy as np
import uvicorn
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from . import density, model


class ServerError(Exception):
    """Base class for registry and service failures."""


class DuplicateDatasetId(ServerError):
    """Two datasets were registered under the same id."""


class InvalidArtifactFile(ServerError):
    """A registered path does not hold a parseable artifact."""

    def __init__(self, path, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = Path(path)
        self.reason = reason


class RegistryLoadError(ServerError):
    """One or more files in a scanned directory failed to parse."""

    def __init__(self, failures: list[InvalidArtifactFile]):
        super().__init__("\n".join(str(f) for f in failures))
        self.failures = failures


class BindError(ServerError):
    """The requested address could not be bound."""


class DatasetRegistry:
    """Id-keyed artifact store, immutable once the server starts.

    Each artifact is serialized once at registration; the cached bytes are
    what every request sees, so responses are reproducible down to the
    byte no matter how the artifact was loaded.
    """

    def __init__(self):
        self._artifacts: dict[str, model.AnalysisArtifact] = {}
        self._blobs: dict[str, bytes] = {}

    def register(self, dataset_id: str, artifact: model.AnalysisArtifact) -> None:
        if dataset_id in self._artifacts:
            raise DuplicateDatasetId(f"dataset id {dataset_id!r} already registered")
        blob = model.serialize_artifact(artifact)
        self._artifacts[dataset_id] = artifact
        self._blobs[dataset_id] = blob

    def register_file(self, dataset_id: str, path) -> None:
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            raise InvalidArtifactFile(path, str(exc)) from exc
        try:
            artifact = model.parse_artifact(raw)
        except model.ArtifactError as exc:
            raise InvalidArtifactFile(path, str(exc)) from exc
        self.register(dataset_id, artifact)

    @classmethod
    def from_dir(cls, directory) -> "DatasetRegistry":
        """Builds a registry from every ``*.json`` file in a directory.

        The dataset id is the filename stem.  All unparseable files are
        collected and reported together.

        Raises:
            RegistryLoadError: Listing every file that failed to parse.
        """
        registry = cls()
        failures = []
        for path in sorted(Path(directory).glob("*.json")):
            try:
                registry.register_file(path.stem, path)
            except InvalidArtifactFile as exc:
                failures.append(exc)
        if failures:
            raise RegistryLoadError(failures)
        return registry

    def ids(self) -> list[str]:
        return sorted(self._artifacts)

    def get(self, dataset_id: str) -> model.AnalysisArtifact | None:
        return self._artifacts.get(dataset_id)

    def blob(self, dataset_id: str) -> bytes | None:
        return self._blobs.get(dataset_id)

    def describe(self, dataset_id: str) -> dict:
        meta = self._artifacts[dataset_id].meta
        return {
            "id": dataset_id,
            "problem": meta.problem_name,
            "algorithm": meta.algorithm_name,
            "n_solutions": meta.n_solutions,
            "n_objectives": meta.n_objectives,
            "n_decision_vars": meta.n_decision_vars,
            "n_references": meta.n_references,
        }


class _BadPolygon(ValueError):
    pass


def _parse_polygon(body) -> density.LassoPolygon:
    """Turns a ``{"polygon": [[x, y], ...]}`` body into a validated polygon.

    Raises:
        _BadPolygon: On any structural problem with the payload.
        density.DegeneratePolygon: On geometric problems (too few vertices,
            non-finite coordinates, zero area).
    """
    if not isinstance(body, dict):
        raise _BadPolygon("request body must be a JSON object")
    raw = body.get("polygon")
    if not isinstance(raw, list):
        raise _BadPolygon("body must carry a 'polygon' list")
    rows = []
    for vertex in raw:
        if not isinstance(vertex, (list, tuple)) or len(vertex) != 2:
            raise _BadPolygon("every vertex must be an [x, y] pair")
        for coordinate in vertex:
            if isinstance(coordinate, bool) or not isinstance(coordinate, (int, float)):
                raise _BadPolygon("vertex coordinates must be numbers")
        rows.append([float(vertex[0]), float(vertex[1])])
    return density.LassoPolygon(np.array(rows).reshape(len(rows), 2))


def create_app(registry: DatasetRegistry, static_dir=None) -> FastAPI:
    """Assembles the API application over an already-populated registry.

    Args:
        registry: Datasets to serve; not mutated afterwards.
        static_dir: Optional directory of frontend assets mounted at ``/``.
    """
    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.get("/api/datasets")
    def list_datasets():
        return [registry.describe(dataset_id) for dataset_id in registry.ids()]

    @app.get("/api/datasets/{dataset_id}")
    def get_dataset(dataset_id: str):
        blob = registry.blob(dataset_id)
        if blob is None:
            return JSONResponse({"error": "unknown dataset"}, status_code=404)
        return Response(content=blob, media_type="application/json")

    @app.post("/api/datasets/{dataset_id}/lasso")
    async def lasso(dataset_id: str, request: Request):
        artifact = registry.get(dataset_id)
        if artifact is None:
            return JSONResponse({"error": "unknown dataset"}, status_code=404)
        if artifact.density is None:
            return JSONResponse({"error": "dataset has no reference set"}, status_code=409)
        try:
            body = await request.json()
        except ValueError:
            return JSONResponse({"error": "request body is not valid JSON"}, status_code=400)
        try:
            polygon = _parse_polygon(body)
        except (_BadPolygon, density.DegeneratePolygon) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        indices, patch = density.lasso_patch(artifact.density, artifact.layout.reference, polygon)
        return {
            "indices": [int(i) for i in indices],
            "patch": model.density_to_dict(patch),
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="frontend")
    return app


def bind_socket(host: str, port: int) -> socket.socket:
    """Binds a listening TCP socket up front so address errors fail fast.

    Port 0 asks the OS for a free port; read the chosen one back from
    ``getsockname``.

    Raises:
        BindError: If the address is occupied or unavailable.
    """
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((host, port))
        sock.listen(128)
    except OSError as exc:
        sock.close()
        raise BindError(f"cannot bind {host}:{port}: {exc}") from exc
    return sock


def serve(
    registry: DatasetRegistry,
    port: int = 8080,
    static_dir=None,
    host: str = "127.0.0.1",
) -> None:
    """Runs the API server until interrupted.

    The socket is bound before the event loop starts, so an occupied port
    raises immediately instead of dying inside the worker.  The actual
    address (meaningful with port 0) is printed on startup.

    Raises:
        BindError: If the address cannot be bound.
    """
    sock = bind_socket(host, port)
    actual_port = sock.getsockname()[1]
    app = create_app(registry, static_dir)
    print(f"serving {len(registry.ids())} dataset(s) on http://{host}:{actual_port}", flush=True)
    config = uvicorn.Config(app, log_level="warning")
    uvicorn.Server(config).run(sockets=[sock])
