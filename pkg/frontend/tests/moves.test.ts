import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { factString, gradedString, movePanel } from "../src/moves.js";
import type { Board, MovesResponse } from "../src/types.js";

const fixtures = JSON.parse(
  readFileSync(join(__dirname, "fixtures", "boards.json"), "utf-8"),
) as Record<string, { board: Board; moves: MovesResponse }>;

describe("move panel", () => {
  it("formats graded dimensions the way the engine prints them", () => {
    expect(gradedString({ exact: true, dims: {} })).toBe("0");
    expect(gradedString({ exact: true, dims: { "0": 1 } })).toBe("C[0]");
    expect(gradedString({ exact: true, dims: { "0": 2, "3": 1 } })).toBe("2[0] + 1[3]");
    expect(
      gradedString({ exact: false, lower: {}, upper: { "0": 1 } }),
    ).toContain("between");
  });

  it("shows vanishing facts verbatim for legal moves", () => {
    const panel = movePanel(fixtures["g2_y"]!.moves);
    expect(panel.legal.length).toBeGreaterThan(0);
    const exchange = panel.legal.find((m) => m.kind === "exchange" && m.facts.length);
    expect(exchange).toBeDefined();
    expect(exchange!.facts[0]).toMatch(/^RHom\(.*\) = 0$/);
  });

  it("always carries the blocking fact for blocked exchanges", () => {
    for (const preset of ["d4_plus", "g2_y"]) {
      const panel = movePanel(fixtures[preset]!.moves);
      expect(panel.blocked.length).toBeGreaterThan(0);
      for (const b of panel.blocked) {
        expect(b.blockingFact).toBeTruthy();
        expect(b.blockingFact).toMatch(/^RHom\(/);
      }
    }
  });

  it("keeps Serre transports unconditionally legal on fresh boards", () => {
    for (const preset of Object.keys(fixtures)) {
      const panel = movePanel(fixtures[preset]!.moves);
      const kinds = panel.legal.map((m) => m.kind);
      // the last block is explicit, so the front transport is always on
      // offer; the back transport is not, because the unknown sits first
      expect(kinds).toContain("serre-to-front");
      expect(kinds).not.toContain("serre-to-back");
      expect(kinds).toContain("unknown-right");
    }
  });

  it("renders facts consistently from raw payloads", () => {
    const fact = {
      a: "O(1,-1)",
      b: "O(0,0)",
      hom: { exact: true, dims: {} },
      required: "0",
      ok: true,
    };
    expect(factString(fact)).toBe("RHom(O(1,-1), O(0,0)) = 0");
  });
});
