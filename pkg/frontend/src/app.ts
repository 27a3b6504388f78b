// Browser wiring: renders the grid, the move panel and the history, and
// drives the controller from clicks.  One session per tab.

import { HttpApi } from "./api.js";
import { renderBoard } from "./board.js";
import { WorkbenchController } from "./controller.js";
import { factString, movePanel } from "./moves.js";
import type { MovesResponse } from "./types.js";

const PRESETS = [
  "d4_plus",
  "d4_minus",
  "g2_y",
  "g2_yprime",
  "k3_d4_plus",
  "k3_d4_minus",
  "k3_g2_n",
  "k3_g2_nprime",
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  private controller: WorkbenchController;
  private root: HTMLElement;
  private status: HTMLElement;

  constructor(root: HTMLElement, apiBase = "") {
    this.root = root;
    this.controller = new WorkbenchController(new HttpApi(apiBase));
    this.status = el("div", "status");
  }

  async start(): Promise<void> {
    const bar = el("div", "toolbar");
    const select = el("select");
    for (const p of PRESETS) {
      const opt = el("option", undefined, p);
      opt.setAttribute("value", p);
      select.appendChild(opt);
    }
    const startBtn = el("button", undefined, "new session");
    const undoBtn = el("button", undefined, "undo");
    const exportBtn = el("button", undefined, "export script + certificate");
    bar.append(select, startBtn, undoBtn, exportBtn, this.status);
    this.root.appendChild(bar);

    const main = el("div", "main");
    this.root.appendChild(main);

    const boot = async () => {
      await this.controller.start(select.value);
      await this.redraw(main);
    };
    startBtn.addEventListener("click", () => void boot().catch((e) => this.fail(e)));
    undoBtn.addEventListener("click", () =>
      void this.controller
        .undo()
        .then(() => this.redraw(main))
        .catch((e) => this.fail(e)),
    );
    exportBtn.addEventListener("click", () =>
      void this.controller
        .exportCertificate()
        .then((doc) => this.download(doc.script, doc.certificateText))
        .catch((e) => this.fail(e)),
    );
    await boot();
  }

  private fail(err: unknown): void {
    const detail =
      err && typeof err === "object" && "blocking" in err && err.blocking
        ? ` blocking fact: ${factString(err.blocking as never)}`
        : "";
    this.status.textContent = `${String(err)}${detail}`;
    this.status.classList.add("error");
  }

  private download(script: string, certificate: string): void {
    for (const [name, text] of [
      ["session.mut", script],
      ["session.cert.json", certificate],
    ] as const) {
      const url = URL.createObjectURL(new Blob([text], { type: "text/plain" }));
      const a = el("a");
      a.setAttribute("href", url);
      a.setAttribute("download", name);
      a.click();
      URL.revokeObjectURL(url);
    }
  }

  private async redraw(main: HTMLElement): Promise<void> {
    this.status.textContent = "";
    this.status.classList.remove("error");
    main.replaceChildren();
    const view = renderBoard(this.controller.board);

    const grid = el("div", "grid");
    grid.style.gridTemplateColumns = `repeat(${view.cols}, 3.2em)`;
    const byPos = new Map(view.cells.map((c) => [`${c.row}:${c.col}`, c]));
    for (let r = 0; r < view.rows; r += 1) {
      for (let c = 0; c < view.cols; c += 1) {
        const cell = byPos.get(`${r}:${c}`);
        const node = el("div", cell ? `cell ${cell.kind}` : "cell empty");
        if (cell) {
          node.textContent = `${cell.glyph}`;
          node.title = `(${cell.a},${cell.b})  ${cell.objects.join(", ")}`;
          node.appendChild(el("div", "coords", `${cell.a},${cell.b}`));
        }
        grid.appendChild(node);
      }
    }
    main.appendChild(grid);

    const side = el("div", "side");
    if (view.unknown) {
      const unk = el("div", "unknown");
      unk.appendChild(el("h3", undefined, view.unknown.label));
      for (const tag of view.unknown.trace) {
        const text =
          typeof tag === "string" ? tag : `${tag[0]}⟨${tag[1].join(", ")}⟩`;
        unk.appendChild(el("div", "tag", text));
      }
      side.appendChild(unk);
    }

    const moves: MovesResponse = await this.controller.refreshMoves();
    const panel = movePanel(moves);
    const legal = el("div", "moves");
    legal.appendChild(el("h3", undefined, "legal moves"));
    for (const entry of panel.legal) {
      const btn = el("button", "move", entry.label);
      btn.title = entry.facts.join("\n");
      btn.addEventListener("click", () =>
        void this.controller
          .applyMove(entry.kind, entry.args)
          .then(() => this.redraw(main))
          .catch((e) => this.fail(e)),
      );
      legal.appendChild(btn);
    }
    side.appendChild(legal);

    const blocked = el("div", "blocked");
    blocked.appendChild(el("h3", undefined, "blocked"));
    for (const entry of panel.blocked) {
      const row = el("div", "blocked-row", entry.label);
      if (entry.blockingFact) row.appendChild(el("div", "fact", entry.blockingFact));
      blocked.appendChild(row);
    }
    side.appendChild(blocked);

    const hist = el("div", "history");
    hist.appendChild(el("h3", undefined, "history"));
    for (const label of this.controller.history.labels) {
      hist.appendChild(el("div", "entry", label));
    }
    side.appendChild(hist);

    const facts = el("div", "facts");
    facts.appendChild(el("h3", undefined, "checked facts (last step)"));
    for (const f of this.controller.lastFacts) {
      facts.appendChild(el("div", "fact", factString(f)));
    }
    side.appendChild(facts);

    main.appendChild(side);
  }
}
