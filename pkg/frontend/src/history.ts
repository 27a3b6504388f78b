// History sidebar model.  Entries are server-confirmed board states only;
// undo pops the local mirror after the server acknowledged.

import type { Board } from "./types.js";

export interface HistoryEntry {
  label: string;
  board: Board;
}

export class History {
  private entries: HistoryEntry[] = [];

  constructor(initial: Board) {
    this.entries = [{ label: "start", board: initial }];
  }

  push(label: string, board: Board): void {
    this.entries.push({ label, board });
  }

  pop(): HistoryEntry | undefined {
    if (this.entries.length <= 1) return undefined;
    return this.entries.pop();
  }

  get current(): HistoryEntry {
    const last = this.entries[this.entries.length - 1];
    if (!last) throw new Error("history is empty");
    return last;
  }

  get labels(): string[] {
    return this.entries.map((e) => e.label);
  }

  get depth(): number {
    return this.entries.length - 1;
  }
}
