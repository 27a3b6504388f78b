// Move-panel model: human-readable labels for legal and blocked moves,
// with the engine's vanishing facts rendered verbatim.

import type { BlockedMove, Fact, GradedJson, Move, MovesResponse } from "./types.js";

export function gradedString(g: GradedJson): string {
  if (g.exact) {
    const dims = g.dims ?? {};
    const keys = Object.keys(dims);
    if (keys.length === 0) return "0";
    if (keys.length === 1 && dims["0"] === 1) return "C[0]";
    return keys
      .sort((x, y) => Number(x) - Number(y))
      .map((k) => `${dims[k]}[${k}]`)
      .join(" + ");
  }
  return `between ${JSON.stringify(g.lower ?? {})} and ${JSON.stringify(g.upper ?? {})}`;
}

export function factString(f: Fact): string {
  return `RHom(${f.a}, ${f.b}) = ${gradedString(f.hom)}`;
}

export function describeMove(kind: string, args: (number | string)[]): string {
  const a = args.map(String);
  switch (kind) {
    case "serre-to-front":
      return `Serre: carry ${a[0]} block(s) to the far left`;
    case "serre-to-back":
      return `Serre: carry ${a[0]} block(s) to the far right`;
    case "unknown-left":
      return `mutate the unknown block left past ${a[0]} block(s)`;
    case "unknown-right":
      return `mutate the unknown block right past ${a[0]} block(s)`;
    case "exchange":
      return `exchange blocks ${a[0]} and ${Number(a[0]) + 1}`;
    case "exchange-objects":
      return `swap objects ${a[1]}, ${Number(a[1]) + 1} in block ${a[0]}`;
    case "rewrite":
      return `mutate through ${a[2]} at block ${a[0]}, object ${a[1]}`;
    case "merge":
      return `regroup ${a[1]} blocks starting at ${a[0]}`;
    default:
      return `${kind} ${a.join(" ")}`;
  }
}

export interface PanelEntry {
  label: string;
  kind: string;
  args: (number | string)[];
  facts: string[];
}

export interface BlockedEntry {
  label: string;
  blockingFact: string | null;
  reason: string;
}

export interface MovePanel {
  legal: PanelEntry[];
  blocked: BlockedEntry[];
}

export function movePanel(moves: MovesResponse): MovePanel {
  return {
    legal: moves.legal.map((m: Move) => ({
      label: describeMove(m.kind, m.args),
      kind: m.kind,
      args: m.args,
      facts: m.facts.map(factString),
    })),
    blocked: moves.blocked.map((m: BlockedMove) => ({
      label: describeMove(m.kind, m.args),
      blockingFact: m.blocking ? factString(m.blocking) : null,
      reason: m.reason,
    })),
  };
}
