"""Workbench API: sessions, boards, move soundness, undo, export."""

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from roofflop.api import create_app
from roofflop.mutation import parse_script, relative_stamp, run_script

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


@pytest.fixture()
def client():
    return TestClient(create_app())


def new_session(client, preset):
    resp = client.post("/v1/sessions", json={"preset": preset})
    assert resp.status_code == 200, resp.text
    return resp.json()


def script_steps(name):
    script = parse_script((SCRIPTS / name).read_text(), name)
    return [{"kind": kind, "args": list(args)} for kind, args in script.steps]


def test_create_preset_session_board(client):
    doc = new_session(client, "d4_plus")
    board = doc["board"]
    assert board["unknown"]["label"] == "D(X+)"
    assert len(board["cells"]) == 18
    assert (board["cells"][-1]["a"], board["cells"][-1]["b"]) == (5, 2)
    doc = new_session(client, "g2_y")
    assert (doc["board"]["cells"][-1]["a"], doc["board"]["cells"][-1]["b"]) == (3, 1)
    doc = new_session(client, "g2_yprime")
    assert (doc["board"]["cells"][-1]["a"], doc["board"]["cells"][-1]["b"]) == (1, 3)


def test_create_unknown_preset_400(client):
    assert client.post("/v1/sessions", json={"preset": "nope"}).status_code == 400


def test_create_custom_sod_and_validation(client):
    ok = client.post(
        "/v1/sessions",
        json={
            "sod": {
                "space": "E_D4",
                "ambient": {"mode": "blowup", "twist": [1, 1],
                            "discrepancy": 3, "ambient_dim": 10},
                "blocks": [
                    {"unknown": "D(X+)"},
                    {"objects": ["O(0,0)"]},
                    {"objects": ["O(1,0)"]},
                ],
            }
        },
    )
    assert ok.status_code == 200

    bad = client.post(
        "/v1/sessions",
        json={
            "sod": {
                "space": "E_D4",
                "ambient": {"mode": "blowup", "twist": [1, 1],
                            "discrepancy": 3, "ambient_dim": 10},
                "blocks": [{"objects": ["O(0,0)"]}, {"objects": ["O(0,0)"]}],
            }
        },
    )
    assert bad.status_code == 400
    detail = bad.json()["detail"]
    assert detail["pair"]["a"] == "O(0,0)" and detail["pair"]["b"] == "O(0,0)"


def test_404_unknown_session(client):
    assert client.get("/v1/sessions/deadbeef/moves").status_code == 404


def test_serre_transport_step_board(client):
    doc = new_session(client, "d4_plus")
    sid = doc["id"]
    resp = client.post(f"/v1/sessions/{sid}/steps",
                       json={"kind": "serre-to-front", "args": [2]})
    assert resp.status_code == 200
    cells = resp.json()["board"]["cells"]
    assert (cells[0]["a"], cells[0]["b"]) == (1, -1)
    assert (cells[1]["a"], cells[1]["b"]) == (2, -1)


def test_illegal_step_409_with_blocking_fact(client):
    sid = new_session(client, "d4_plus")["id"]
    resp = client.post(f"/v1/sessions/{sid}/steps", json={"kind": "exchange", "args": [1]})
    assert resp.status_code == 409
    detail = resp.json()["detail"]
    assert detail["blocking"] is not None and detail["blocking"]["ok"] is False


def test_undo_is_exact_inverse(client):
    sid = new_session(client, "g2_y")["id"]
    before = client.get(f"/v1/sessions/{sid}/moves").json()
    board0 = client.post(f"/v1/sessions/{sid}/steps",
                         json={"kind": "serre-to-front", "args": [1]}).json()["board"]
    undone = client.post(f"/v1/sessions/{sid}/undo").json()["board"]
    fresh = new_session(client, "g2_y")["board"]
    assert undone == fresh
    after = client.get(f"/v1/sessions/{sid}/moves").json()
    assert before == after


def test_sessions_are_isolated(client):
    a = new_session(client, "g2_y")["id"]
    b = new_session(client, "g2_y")["id"]
    client.post(f"/v1/sessions/{a}/steps", json={"kind": "serre-to-front", "args": [1]})
    board_b = client.post(f"/v1/sessions/{b}/undo").json()["board"]
    assert (board_b["cells"][-1]["a"], board_b["cells"][-1]["b"]) == (3, 1)


@pytest.mark.parametrize("preset,script", [
    ("d4_plus", "d4_flop.mut"),
    ("d4_minus", "d4_flop_minus.mut"),
    ("g2_y", "g2dagger.mut"),
    ("g2_yprime", "g2dagger_minus.mut"),
])
def test_moves_endpoint_soundness_first_three_plies(client, preset, script):
    # every listed legal move must be accepted when applied
    steps = script_steps(script)
    path = []
    for ply in range(3):
        sid = new_session(client, preset)["id"]
        for st in path:
            assert client.post(f"/v1/sessions/{sid}/steps", json=st).status_code == 200
        moves = client.get(f"/v1/sessions/{sid}/moves").json()
        assert moves["legal"]
        for move in moves["legal"]:
            probe = new_session(client, preset)["id"]
            for st in path:
                client.post(f"/v1/sessions/{probe}/steps", json=st)
            resp = client.post(
                f"/v1/sessions/{probe}/steps",
                json={"kind": move["kind"], "args": move["args"]},
            )
            assert resp.status_code == 200, (ply, move, resp.text)
        path.append(steps[ply])


def test_blocked_moves_carry_their_fact(client):
    sid = new_session(client, "d4_plus")["id"]
    moves = client.get(f"/v1/sessions/{sid}/moves").json()
    assert moves["blocked"]
    for mv in moves["blocked"]:
        assert mv["blocking"] is not None
        assert mv["blocking"]["ok"] is False


def test_certificate_export_matches_cli(client, tmp_path):
    # replaying the shipped script through the API and exporting must give
    # a certificate byte-identical to the CLI's
    sid = new_session(client, "d4_plus")["id"]
    for st in script_steps("d4_flop.mut"):
        resp = client.post(f"/v1/sessions/{sid}/steps", json=st)
        assert resp.status_code == 200, resp.text
    minus_path = str(SCRIPTS / "d4_flop_minus.mut")
    resp = client.get(
        f"/v1/sessions/{sid}/certificate",
        params={"script_name": "d4_flop", "compare_with": minus_path},
    )
    assert resp.status_code == 200
    exported = resp.json()["certificate"]
    api_bytes = (json.dumps(exported, indent=2, sort_keys=True) + "\n").encode()
    cli_cert = relative_stamp(run_script(SCRIPTS / "d4_flop.mut"))
    assert api_bytes == cli_cert.to_json_bytes()
    assert "step serre-to-front 2" in resp.json()["script"]


def test_export_requires_preset_session(client):
    resp = client.post(
        "/v1/sessions",
        json={
            "sod": {
                "space": "R",
                "ambient": {"mode": "blowup", "twist": [1, 1],
                            "discrepancy": 2, "ambient_dim": 8},
                "blocks": [{"objects": ["O(0,0)"]}],
            }
        },
    )
    sid = resp.json()["id"]
    assert client.get(f"/v1/sessions/{sid}/certificate").status_code == 400
