#!/usr/bin/env python3
"""Record API request/response fixtures for the workbench UI tests.

Drives the in-process API through the full first-presentation replay and a
few exploration queries, then writes the network log plus the CLI
certificate bytes to frontend/tests/fixtures/.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from roofflop.api import create_app
from roofflop.mutation import parse_script, relative_stamp, run_script

ROOT = Path(__file__).resolve().parents[1]
SCRIPTS = ROOT / "scripts"
OUT = ROOT / "frontend" / "tests" / "fixtures"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    # --- replay of the first-presentation script ---------------------------
    log = []
    created = client.post("/v1/sessions", json={"preset": "d4_plus"}).json()
    sid = created["id"]
    script = parse_script((SCRIPTS / "d4_flop.mut").read_text(), "d4_flop")
    for kind, args in script.steps:
        body = {"kind": kind, "args": list(args)}
        resp = client.post(f"/v1/sessions/{sid}/steps", json=body)
        log.append({"request": body, "status": resp.status_code, "response": resp.json()})
    cert_resp = client.get(
        f"/v1/sessions/{sid}/certificate",
        params={"script_name": "d4_flop", "compare_with": str(SCRIPTS / "d4_flop_minus.mut")},
    ).json()
    cli_cert = relative_stamp(run_script(SCRIPTS / "d4_flop.mut"))
    (OUT / "d4_replay.json").write_text(
        json.dumps(
            {
                "preset": "d4_plus",
                "initial": created,
                "steps": log,
                "certificate_response": cert_resp,
                "cli_certificate": cli_cert.to_json_bytes().decode(),
            },
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )

    # --- boards and move panels for rendering tests ------------------------
    boards = {}
    for preset in ("d4_plus", "d4_minus", "g2_y", "g2_yprime"):
        doc = client.post("/v1/sessions", json={"preset": preset}).json()
        moves = client.get(f"/v1/sessions/{doc['id']}/moves").json()
        boards[preset] = {"board": doc["board"], "moves": moves}
    (OUT / "boards.json").write_text(
        json.dumps(boards, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    # --- an undo round trip -------------------------------------------------
    doc = client.post("/v1/sessions", json={"preset": "g2_y"}).json()
    sid = doc["id"]
    stepped = client.post(
        f"/v1/sessions/{sid}/steps", json={"kind": "serre-to-front", "args": [1]}
    ).json()
    undone = client.post(f"/v1/sessions/{sid}/undo").json()
    (OUT / "undo.json").write_text(
        json.dumps(
            {"initial": doc, "after_step": stepped, "after_undo": undone},
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
