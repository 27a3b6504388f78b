// Network-log replay: the controller is driven through the full
// first-presentation mutation sequence against recorded API traffic.  The
// test asserts that the UI only ever shows server-confirmed boards, that it
// issues exactly the recorded requests, and that the exported certificate
// is byte-identical to the CLI's.

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import type { ApiClient } from "../src/api.js";
import { WorkbenchController } from "../src/controller.js";
import type {
  Board,
  CertificateResponse,
  MovesResponse,
  SessionResponse,
  StepResponse,
} from "../src/types.js";

interface RecordedStep {
  request: { kind: string; args: (number | string)[] };
  status: number;
  response: StepResponse;
}

interface ReplayFixture {
  preset: string;
  initial: SessionResponse;
  steps: RecordedStep[];
  certificate_response: CertificateResponse;
  cli_certificate: string;
}

const fixture = JSON.parse(
  readFileSync(join(__dirname, "fixtures", "d4_replay.json"), "utf-8"),
) as ReplayFixture;

class RecordedApi implements ApiClient {
  cursor = 0;
  requests: { kind: string; args: (number | string)[] }[] = [];

  async createSession(preset: string): Promise<SessionResponse> {
    expect(preset).toBe(fixture.preset);
    return fixture.initial;
  }

  async moves(): Promise<MovesResponse> {
    return { legal: [], blocked: [] };
  }

  async step(
    id: string,
    kind: string,
    args: (number | string)[],
  ): Promise<StepResponse> {
    expect(id).toBe(fixture.initial.id);
    const expected = fixture.steps[this.cursor];
    expect(expected, `unexpected extra request ${kind}`).toBeDefined();
    expect({ kind, args: args.map(String) }).toEqual({
      kind: expected!.request.kind,
      args: expected!.request.args.map(String),
    });
    this.requests.push({ kind, args });
    this.cursor += 1;
    return expected!.response;
  }

  async undo(): Promise<{ board: Board }> {
    throw new Error("not recorded");
  }

  async certificate(
    id: string,
    scriptName?: string,
  ): Promise<CertificateResponse> {
    expect(id).toBe(fixture.initial.id);
    expect(scriptName).toBe("d4_flop");
    return fixture.certificate_response;
  }
}

describe("full replay through the recorded API", () => {
  it("drives every step, mirrors server state, and exports the CLI bytes", async () => {
    const api = new RecordedApi();
    const controller = new WorkbenchController(api);
    const first = await controller.start(fixture.preset);
    expect(first).toEqual(fixture.initial.board);

    for (const step of fixture.steps) {
      const board = await controller.applyMove(
        step.request.kind,
        step.request.args,
      );
      // the board shown is exactly the response body, never derived locally
      expect(board).toEqual(step.response.board);
      expect(controller.board).toEqual(step.response.board);
      expect(controller.lastFacts).toEqual(step.response.checked_facts);
    }
    expect(api.cursor).toBe(fixture.steps.length);
    expect(controller.history.depth).toBe(fixture.steps.length);

    const exported = await controller.exportCertificate(
      "d4_flop",
      "scripts/d4_flop_minus.mut",
    );
    expect(exported.certificateText).toBe(fixture.cli_certificate);

    // the terminal board shows the six rewritten cells plus the unknown
    const final = controller.board;
    expect(final.cells).toHaveLength(6);
    expect(final.cells.every((c) => c.objects.length === 4)).toBe(true);
    expect(final.unknown?.trace.length).toBe(3);
  });
});
