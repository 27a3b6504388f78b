// Pure board rendering: the grid view is a function of the API response and
// nothing else.  Coordinates follow the usual plane convention: the first
// twist grows to the right, the second grows upwards.

import type { Board, Cell, UnknownInfo } from "./types.js";

export interface GridCell {
  row: number; // 0 = top
  col: number; // 0 = left
  a: number;
  b: number;
  kind: string;
  glyph: string;
  objects: string[];
  blockIndex: number;
}

export interface BoardView {
  rows: number;
  cols: number;
  cells: GridCell[];
  unknown: UnknownInfo | null;
  space: string;
  ambientMode: string;
}

const GLYPHS: Record<string, string> = {
  single: "□", // plain square: one line bundle
  double: "◩", // corner-marked square: line bundle + spinor piece
  quad: "▣",   // filled-corner square: rewritten four-object cell
};

export function cellGlyph(kind: string): string {
  return GLYPHS[kind] ?? "□";
}

export function renderBoard(board: Board): BoardView {
  const cells = board.cells;
  if (cells.length === 0) {
    return {
      rows: 0,
      cols: 0,
      cells: [],
      unknown: board.unknown,
      space: board.space,
      ambientMode: board.ambient.mode,
    };
  }
  const as = cells.map((c) => c.a);
  const bs = cells.map((c) => c.b);
  const aMin = Math.min(...as);
  const aMax = Math.max(...as);
  const bMin = Math.min(...bs);
  const bMax = Math.max(...bs);
  const grid = cells.map((c: Cell): GridCell => ({
    row: bMax - c.b,
    col: c.a - aMin,
    a: c.a,
    b: c.b,
    kind: c.kind,
    glyph: cellGlyph(c.kind),
    objects: c.objects,
    blockIndex: c.index,
  }));
  return {
    rows: bMax - bMin + 1,
    cols: aMax - aMin + 1,
    cells: grid,
    unknown: board.unknown,
    space: board.space,
    ambientMode: board.ambient.mode,
  };
}
