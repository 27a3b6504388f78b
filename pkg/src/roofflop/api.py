"""Local workbench API: sessions, boards, legal moves, steps, certificates.

JSON over HTTP on localhost, versioned under /v1.  Sessions are in-memory
with idle expiry; exporting a session as a script + certificate is the save
mechanism.  Requests within one session are serialised; sessions are
independent.
"""

from __future__ import annotations

import os
import secrets
import tempfile
import threading
import time

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import bundle_expr as be
from .mutation import (
    Block,
    MutationError,
    PRESETS,
    SOD,
    apply_step,
    preset_sod,
    relative_stamp,
    run_script,
    validate_sod,
)
from .sheafcalc import AmbientContext, SheafObject, rhom
from .spaces import load_standard_catalog

SESSION_TTL_SECONDS = 24 * 3600


class CreateSession(BaseModel):
    preset: str | None = None
    sod: dict | None = None


class StepBody(BaseModel):
    kind: str
    args: list


class _Session:
    def __init__(self, sod: SOD, preset: str | None):
        self.id = secrets.token_hex(8)
        self.preset = preset
        self.history = [sod]
        self.steps = []  # (kind, args) applied so far
        self.created = time.time()
        self.touched = self.created
        self.lock = threading.Lock()

    @property
    def sod(self) -> SOD:
        return self.history[-1]


def board_json(sod: SOD):
    cells = []
    unknown = None
    for i, blk in enumerate(sod.blocks):
        if blk.is_unknown:
            unknown = {
                "index": i,
                "label": blk.unknown_label,
                "trace": [list(t) if isinstance(t, tuple) else t for t in blk.pending_functors],
            }
        else:
            kind, a, b = blk.anchor if blk.anchor else ("single", 0, 0)
            cells.append(
                {
                    "index": i,
                    "kind": kind,
                    "a": a,
                    "b": b,
                    "objects": [str(o) for o in blk.objects],
                }
            )
    return {
        "space": sod.space,
        "ambient": sod.ambient.to_json(),
        "cells": cells,
        "unknown": unknown,
    }


def _sod_from_custom(doc):
    catalog = load_standard_catalog()
    entry = catalog.space(doc["space"])
    amb = doc.get("ambient", {"mode": "plain"})
    ctx = AmbientContext(
        amb.get("mode", "plain"),
        tuple(amb.get("twist", ())),
        amb.get("discrepancy", 0),
        amb.get("ambient_dim", 0),
    )
    blocks = []
    unknown_seen = 0
    for b in doc["blocks"]:
        if "unknown" in b:
            unknown_seen += 1
            blocks.append(Block(unknown_label=b["unknown"]))
        else:
            objs = tuple(
                SheafObject(entry.name, be.parse_bundle_expr(s)) for s in b["objects"]
            )
            blocks.append(Block(objects=objs))
    if unknown_seen > 1:
        raise MutationError("at most one unknown block is allowed")
    return SOD(space=entry.name, ambient=ctx, blocks=tuple(blocks))


def _legal_moves(sod: SOD):
    """Candidate moves with their justification facts, capped at adjacent
    exchanges and registered rewrites."""
    catalog = load_standard_catalog()
    legal, blocked = [], []
    n = len(sod.blocks)

    def probe(move):
        try:
            _, facts = apply_step(sod, move["kind"], move["args"], catalog)
            legal.append({**move, "facts": facts})
        except MutationError as err:
            blocked.append({**move, "blocking": err.fact, "reason": str(err)})

    if n and not sod.blocks[-1].is_unknown:
        legal.append({"kind": "serre-to-front", "args": [1], "facts": []})
    if n and not sod.blocks[0].is_unknown:
        legal.append({"kind": "serre-to-back", "args": [1], "facts": []})
    u = sod.unknown_index
    if u is not None:
        if u > 0:
            legal.append({"kind": "unknown-left", "args": [1], "facts": []})
        if u < n - 1:
            legal.append({"kind": "unknown-right", "args": [1], "facts": []})
    for i in range(n - 1):
        if sod.blocks[i].is_unknown or sod.blocks[i + 1].is_unknown:
            continue
        probe({"kind": "exchange", "args": [i]})
        legal.append({"kind": "merge", "args": [i, 2], "facts": []})
    for bi, blk in enumerate(sod.blocks):
        if blk.is_unknown:
            continue
        for oi in range(len(blk.objects) - 1):
            probe({"kind": "exchange-objects", "args": [bi, oi]})
            first = blk.objects[oi]
            if isinstance(first.expr, be.Line):
                for rule_name, rule in catalog.sequences.items():
                    if rule.space != sod.space:
                        continue
                    try:
                        apply_step(sod, "rewrite", [bi, oi, rule_name], catalog)
                    except MutationError:
                        continue
                    legal.append({"kind": "rewrite", "args": [bi, oi, rule_name], "facts": []})
    return legal, blocked


def create_app() -> FastAPI:
    app = FastAPI(title="roofflop workbench", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"http://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, _Session] = {}
    store_lock = threading.Lock()

    def get_session(sid) -> _Session:
        with store_lock:
            now = time.time()
            for key in [k for k, s in sessions.items() if now - s.touched > SESSION_TTL_SECONDS]:
                del sessions[key]
            sess = sessions.get(sid)
            if sess is None:
                raise HTTPException(status_code=404, detail=f"unknown session {sid}")
            sess.touched = now
            return sess

    @app.post("/v1/sessions")
    def create_session(body: CreateSession):
        if (body.preset is None) == (body.sod is None):
            raise HTTPException(status_code=400, detail="provide exactly one of preset/sod")
        try:
            if body.preset:
                sod = preset_sod(body.preset)
            else:
                sod = _sod_from_custom(body.sod)
                bad = validate_sod(sod)
                if bad is not None:
                    raise HTTPException(
                        status_code=400,
                        detail={"message": "SOD is not semiorthogonal", "pair": bad},
                    )
        except (MutationError, be.ExprParseError, KeyError) as err:
            raise HTTPException(status_code=400, detail=str(err))
        sess = _Session(sod, body.preset)
        with store_lock:
            sessions[sess.id] = sess
        return {"id": sess.id, "board": board_json(sod)}

    @app.get("/v1/sessions/{sid}/moves")
    def moves(sid: str):
        sess = get_session(sid)
        with sess.lock:
            legal, blocked = _legal_moves(sess.sod)
        return {"legal": legal, "blocked": blocked}

    @app.post("/v1/sessions/{sid}/steps")
    def step(sid: str, body: StepBody):
        sess = get_session(sid)
        with sess.lock:
            try:
                new_sod, facts = apply_step(sess.sod, body.kind, body.args)
            except MutationError as err:
                raise HTTPException(
                    status_code=409,
                    detail={"message": str(err), "blocking": err.fact},
                )
            sess.history.append(new_sod)
            sess.steps.append((body.kind, [str(a) for a in body.args]))
            return {"board": board_json(new_sod), "checked_facts": facts}

    @app.post("/v1/sessions/{sid}/undo")
    def undo(sid: str):
        sess = get_session(sid)
        with sess.lock:
            if len(sess.history) > 1:
                sess.history.pop()
                sess.steps.pop()
            return {"board": board_json(sess.sod)}

    @app.get("/v1/sessions/{sid}/certificate")
    def certificate(
        sid: str,
        script_name: str = Query(default="session"),
        compare_with: str | None = Query(default=None),
    ):
        sess = get_session(sid)
        with sess.lock:
            if sess.preset is None:
                raise HTTPException(
                    status_code=400, detail="only preset-based sessions can be exported"
                )
            lines = [
                f"space {PRESETS[sess.preset].space}",
                f"ambient {PRESETS[sess.preset].ambient.mode}",
                f"sod preset {sess.preset}",
            ]
            lines += [f"step {kind} {' '.join(args)}" for kind, args in sess.steps]
            if compare_with:
                lines.append(f"compare-with {os.path.abspath(compare_with)}")
            script_text = "\n".join(lines) + "\n"
            with tempfile.TemporaryDirectory() as tmp:
                path = os.path.join(tmp, f"{script_name}.mut")
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(script_text)
                try:
                    cert = relative_stamp(run_script(path))
                except MutationError as err:
                    raise HTTPException(status_code=409, detail=str(err))
            return {"script": script_text, "certificate": cert.to_json_obj()}

    return app
