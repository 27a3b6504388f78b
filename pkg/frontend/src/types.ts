// JSON shapes of the /v1 workbench API.

export interface GradedJson {
  exact: boolean;
  dims?: Record<string, number>;
  lower?: Record<string, number>;
  upper?: Record<string, number>;
}

export interface Fact {
  a: string;
  b: string;
  hom: GradedJson;
  required: string;
  ok: boolean;
}

export interface Cell {
  index: number;
  kind: string;
  a: number;
  b: number;
  objects: string[];
}

export type TraceTag = string | [string, string[]];

export interface UnknownInfo {
  index: number;
  label: string;
  trace: TraceTag[];
}

export interface AmbientJson {
  mode: string;
  twist?: number[];
  discrepancy?: number;
  ambient_dim?: number;
}

export interface Board {
  space: string;
  ambient: AmbientJson;
  cells: Cell[];
  unknown: UnknownInfo | null;
}

export interface Move {
  kind: string;
  args: (number | string)[];
  facts: Fact[];
}

export interface BlockedMove {
  kind: string;
  args: (number | string)[];
  blocking: Fact | null;
  reason: string;
}

export interface MovesResponse {
  legal: Move[];
  blocked: BlockedMove[];
}

export interface SessionResponse {
  id: string;
  board: Board;
}

export interface StepResponse {
  board: Board;
  checked_facts: Fact[];
}

export interface CertificateResponse {
  script: string;
  certificate: unknown;
}
