import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { cellGlyph, renderBoard } from "../src/board.js";
import type { Board, MovesResponse } from "../src/types.js";

const fixtures = JSON.parse(
  readFileSync(join(__dirname, "fixtures", "boards.json"), "utf-8"),
) as Record<string, { board: Board; moves: MovesResponse }>;

function view(preset: string) {
  return renderBoard(fixtures[preset]!.board);
}

describe("board rendering", () => {
  it("is a pure function of the API payload", () => {
    const a = view("d4_plus");
    const b = view("d4_plus");
    expect(a).toEqual(b);
  });

  it("renders the first-presentation board with its rightmost corner at (5,2)", () => {
    const v = view("d4_plus");
    expect(v.cells).toHaveLength(18);
    const corner = v.cells.find((c) => c.a === 5 && c.b === 2)!;
    expect(corner).toBeDefined();
    expect(Math.max(...v.cells.map((c) => c.a))).toBe(5);
  });

  it("orients axes with the first twist rightward and the second upward", () => {
    const v = view("d4_plus");
    for (const x of v.cells) {
      for (const y of v.cells) {
        if (x.a > y.a) expect(x.col).toBeGreaterThan(y.col);
        if (x.b > y.b) expect(x.row).toBeLessThan(y.row); // larger b sits higher
      }
    }
  });

  it("renders the mirror boards with corners (2,4), (3,1) and (1,3)", () => {
    expect(view("d4_minus").cells.some((c) => c.a === 2 && c.b === 4)).toBe(true);
    const y = view("g2_y");
    expect(Math.max(...y.cells.map((c) => c.a))).toBe(3);
    expect(view("g2_yprime").cells.some((c) => c.a === 1 && c.b === 3)).toBe(true);
  });

  it("distinguishes one-object and two-object cells by glyph", () => {
    const v = view("g2_y");
    const singles = v.cells.filter((c) => c.kind === "single");
    const doubles = v.cells.filter((c) => c.kind === "double");
    expect(singles.length).toBe(8);
    expect(doubles.length).toBe(2);
    expect(new Set(singles.map((c) => c.glyph)).size).toBe(1);
    expect(singles[0]!.glyph).not.toBe(doubles[0]!.glyph);
    expect(cellGlyph("quad")).not.toBe(cellGlyph("double"));
  });

  it("shows the unknown block as a side panel datum, not a grid cell", () => {
    const v = view("d4_plus");
    expect(v.unknown?.label).toBe("D(X+)");
    expect(v.cells.every((c) => c.objects.length > 0)).toBe(true);
  });

  it("renders an empty board without cells", () => {
    const v = renderBoard({
      space: "E_D4",
      ambient: { mode: "blowup" },
      cells: [],
      unknown: null,
    });
    expect(v.rows).toBe(0);
    expect(v.cells).toEqual([]);
  });
});
