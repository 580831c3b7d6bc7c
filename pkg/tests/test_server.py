"""HTTP contract: listing, artifact bytes, lasso patches, error codes."""

import json
import socket

import numpy as np
import pytest
from fastapi.testclient import TestClient

from frontscope import model, server
from frontscope.density import point_in_polygon
from frontscope.pipeline import PipelineConfig, annotate_sets
from frontscope.projection import ProjectionConfig
from frontscope.server import BindError, DatasetRegistry, DuplicateDatasetId, RegistryLoadError
from frontscope.tsne import TsneParams
from test_pipeline import make_sets


def build_artifact(n=40, r=25, seed=0):
    proj = ProjectionConfig(tsne=TsneParams(iterations=260, early_exaggeration_iters=80))
    config = PipelineConfig(projection=proj, seed=seed)
    solutions, references = make_sets(n=n, r=r, seed=seed)
    artifact, _ = annotate_sets(solutions, references, config)
    return artifact


@pytest.fixture(scope="module")
def dense_artifact():
    return build_artifact()


@pytest.fixture(scope="module")
def bare_artifact():
    return build_artifact(r=0, seed=1)


@pytest.fixture(scope="module")
def client(dense_artifact, bare_artifact):
    registry = DatasetRegistry()
    registry.register("zeta", dense_artifact)
    registry.register("alpha", bare_artifact)
    return TestClient(server.create_app(registry))


def enclosing_polygon(artifact):
    xy = artifact.layout.reference
    lo = xy.min(axis=0) - 1.0
    hi = xy.max(axis=0) + 1.0
    return [[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]]


def test_listing_is_id_sorted_and_mirrors_meta(client, dense_artifact):
    entries = client.get("/api/datasets").json()
    assert [e["id"] for e in entries] == ["alpha", "zeta"]
    meta = dense_artifact.meta
    assert entries[1] == {
        "id": "zeta",
        "problem": meta.problem_name,
        "algorithm": meta.algorithm_name,
        "n_solutions": meta.n_solutions,
        "n_objectives": meta.n_objectives,
        "n_decision_vars": meta.n_decision_vars,
        "n_references": meta.n_references,
    }


def test_empty_registry_lists_nothing():
    empty = TestClient(server.create_app(DatasetRegistry()))
    assert empty.get("/api/datasets").json() == []


def test_dataset_body_is_byte_identical_to_serialization(client, dense_artifact):
    response = client.get("/api/datasets/zeta")
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("application/json")
    assert response.content == model.serialize_artifact(dense_artifact)
    reparsed = model.parse_artifact(response.content)
    assert model.serialize_artifact(reparsed) == response.content


def test_unknown_dataset_is_404(client):
    response = client.get("/api/datasets/nope")
    assert response.status_code == 404
    assert response.json() == {"error": "unknown dataset"}
    assert client.post("/api/datasets/nope/lasso", json={"polygon": [[0, 0], [1, 0], [0, 1]]}).status_code == 404


def test_unknown_route_is_404(client):
    assert client.get("/api/other").status_code == 404


def test_enclosing_lasso_returns_everything_and_the_base_field(client, dense_artifact):
    polygon = enclosing_polygon(dense_artifact)
    response = client.post("/api/datasets/zeta/lasso", json={"polygon": polygon})
    assert response.status_code == 200
    payload = response.json()
    assert payload["indices"] == list(range(dense_artifact.meta.n_references))
    base = dense_artifact.density
    patch = payload["patch"]
    assert patch["w"] == base.grid_w and patch["h"] == base.grid_h
    assert patch["bounds"] == pytest.approx(list(base.bounds))
    assert patch["bandwidth"] == pytest.approx(base.bandwidth)
    np.testing.assert_allclose(
        np.array(patch["values"]).reshape(base.grid_h, base.grid_w),
        base.values,
        atol=1e-12,
    )
    assert patch["outliers"] == []


def test_faraway_lasso_selects_nothing(client):
    polygon = [[1e6, 1e6], [1e6 + 1, 1e6], [1e6, 1e6 + 1]]
    payload = client.post("/api/datasets/zeta/lasso", json={"polygon": polygon}).json()
    assert payload["indices"] == []
    assert not any(payload["patch"]["values"])


def test_half_plane_lasso_matches_membership_oracle(client, dense_artifact):
    xy = dense_artifact.layout.reference
    lo = xy.min(axis=0) - 1.0
    hi = xy.max(axis=0) + 1.0
    mid = float(np.median(xy[:, 0])) + 1e-6
    polygon = [[lo[0], lo[1]], [mid, lo[1]], [mid, hi[1]], [lo[0], hi[1]]]
    payload = client.post("/api/datasets/zeta/lasso", json={"polygon": polygon}).json()
    from frontscope.density import LassoPolygon

    expected = np.flatnonzero(point_in_polygon(xy, LassoPolygon(np.array(polygon))))
    assert payload["indices"] == [int(i) for i in expected]
    assert 0 < len(payload["indices"]) < len(xy)


@pytest.mark.parametrize(
    "body",
    [
        {"polygon": [[0, 0], [1, 1]]},
        {"polygon": [[0, 0], [1, 1], [2, 2]]},
        {"polygon": [[0, 0], [1, 0], ["x", 1]]},
        {"polygon": [[0, 0], [1, 0], [None, 1]]},
        {"polygon": [[0, 0], [1, 0], [0, 1, 2]]},
        {"polygon": "triangle"},
        {"shape": [[0, 0], [1, 0], [0, 1]]},
        [],
    ],
)
def test_malformed_polygon_is_400(client, body):
    response = client.post("/api/datasets/zeta/lasso", json=body)
    assert response.status_code == 400
    assert "error" in response.json()


def test_unparseable_body_is_400(client):
    response = client.post(
        "/api/datasets/zeta/lasso",
        content=b"not json",
        headers={"content-type": "application/json"},
    )
    assert response.status_code == 400


def test_lasso_without_references_is_409(client):
    response = client.post(
        "/api/datasets/alpha/lasso", json={"polygon": [[0, 0], [1, 0], [0, 1]]}
    )
    assert response.status_code == 409
    assert "error" in response.json()


def test_cors_headers_present(client):
    response = client.get("/api/datasets", headers={"origin": "http://localhost:3000"})
    assert response.headers.get("access-control-allow-origin") == "*"


def test_static_dir_served_at_root(tmp_path, dense_artifact):
    (tmp_path / "index.html").write_text("<html><body>viewer</body></html>")
    registry = DatasetRegistry()
    registry.register("only", dense_artifact)
    with_static = TestClient(server.create_app(registry, static_dir=tmp_path))
    page = with_static.get("/")
    assert page.status_code == 200
    assert "viewer" in page.text
    assert with_static.get("/api/datasets").json()[0]["id"] == "only"


def test_duplicate_registration_rejected(dense_artifact):
    registry = DatasetRegistry()
    registry.register("twin", dense_artifact)
    with pytest.raises(DuplicateDatasetId):
        registry.register("twin", dense_artifact)


def test_from_dir_loads_valid_artifacts(tmp_path, dense_artifact, bare_artifact):
    (tmp_path / "beta.json").write_bytes(model.serialize_artifact(dense_artifact))
    (tmp_path / "acme.json").write_bytes(model.serialize_artifact(bare_artifact))
    (tmp_path / "notes.txt").write_text("ignored")
    registry = DatasetRegistry.from_dir(tmp_path)
    assert registry.ids() == ["acme", "beta"]
    assert registry.blob("beta") == model.serialize_artifact(dense_artifact)


def test_from_dir_reports_every_bad_file(tmp_path, dense_artifact):
    (tmp_path / "good.json").write_bytes(model.serialize_artifact(dense_artifact))
    (tmp_path / "bad.json").write_text("{broken")
    (tmp_path / "worse.json").write_text(json.dumps({"schema_version": "9.0"}))
    with pytest.raises(RegistryLoadError) as info:
        DatasetRegistry.from_dir(tmp_path)
    message = str(info.value)
    assert "bad.json" in message and "worse.json" in message
    assert len(info.value.failures) == 2


def test_bind_error_on_occupied_port(dense_artifact):
    holder = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    holder.bind(("127.0.0.1", 0))
    holder.listen(1)
    port = holder.getsockname()[1]
    try:
        registry = DatasetRegistry()
        registry.register("x", dense_artifact)
        with pytest.raises(BindError):
            server.serve(registry, port=port)
    finally:
        holder.close()


def test_bind_socket_reports_os_assigned_port():
    sock = server.bind_socket("127.0.0.1", 0)
    try:
        assert sock.getsockname()[1] > 0
    finally:
        sock.close()
