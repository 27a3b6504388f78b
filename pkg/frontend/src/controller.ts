// Session controller.  The board shown is always the latest API response;
// the controller never computes a board locally (optimistic updates are
// deliberately impossible here: there is no code path that could make one).

import type { ApiClient } from "./api.js";
import { canonicalJson } from "./canonical.js";
import { History } from "./history.js";
import { describeMove } from "./moves.js";
import type { Board, Fact, MovesResponse } from "./types.js";

export interface ControllerState {
  sessionId: string;
  preset: string;
  board: Board;
  lastFacts: Fact[];
}

export class WorkbenchController {
  private state: ControllerState | null = null;
  private historyLog: History | null = null;

  constructor(private api: ApiClient) {}

  get board(): Board {
    return this.require().board;
  }

  get lastFacts(): Fact[] {
    return this.require().lastFacts;
  }

  get history(): History {
    if (!this.historyLog) throw new Error("no session");
    return this.historyLog;
  }

  private require(): ControllerState {
    if (!this.state) throw new Error("no session");
    return this.state;
  }

  async start(preset: string): Promise<Board> {
    const doc = await this.api.createSession(preset);
    this.state = {
      sessionId: doc.id,
      preset,
      board: doc.board,
      lastFacts: [],
    };
    this.historyLog = new History(doc.board);
    return doc.board;
  }

  async refreshMoves(): Promise<MovesResponse> {
    return this.api.moves(this.require().sessionId);
  }

  async applyMove(kind: string, args: (number | string)[]): Promise<Board> {
    const st = this.require();
    const resp = await this.api.step(st.sessionId, kind, args);
    st.board = resp.board;
    st.lastFacts = resp.checked_facts;
    this.history.push(describeMove(kind, args), resp.board);
    return resp.board;
  }

  async undo(): Promise<Board> {
    const st = this.require();
    const resp = await this.api.undo(st.sessionId);
    st.board = resp.board;
    st.lastFacts = [];
    this.history.pop();
    return resp.board;
  }

  async exportCertificate(
    scriptName = "session",
    compareWith?: string,
  ): Promise<{ script: string; certificateText: string }> {
    const st = this.require();
    const doc = await this.api.certificate(st.sessionId, scriptName, compareWith);
    return { script: doc.script, certificateText: canonicalJson(doc.certificate) };
  }
}
