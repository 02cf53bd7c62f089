/** DOM application: renders snapshots from the debug service and wires the
 * controls. All semantic state lives server-side; this module is a view. */

import {
  browserSocket,
  Channel,
  channelUrl,
  createSession,
  SessionCreateError,
} from "./client.js";
import { layoutUnit } from "./layout.js";
import type { ProgramInfo, Snapshot } from "./protocol.js";
import {
  banner,
  controlState,
  highlights,
  scrubPlan,
  sourceSegments,
  stackRows,
  storeRows,
  toggleBreakpoint,
} from "./viewmodel.js";

const CELL_W = 150;
const CELL_H = 56;

interface Elements {
  source: HTMLElement;
  sourceInput: HTMLTextAreaElement;
  load: HTMLButtonElement;
  store: HTMLElement;
  stack: HTMLElement;
  cfg: HTMLElement;
  banner: HTMLElement;
  connection: HTMLElement;
  stepFwd: HTMLButtonElement;
  stepBwd: HTMLButtonElement;
  run: HTMLButtonElement;
  runBack: HTMLButtonElement;
  scrubber: HTMLInputElement;
  scrubLabel: HTMLElement;
}

function grab(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

export class App {
  private channel: Channel | null = null;
  private program: ProgramInfo | null = null;
  private snapshot: Snapshot | null = null;
  private maxHistory = 0;
  private busy = false;
  private el: Elements;

  constructor(private baseUrl: string) {
    this.el = {
      source: grab("source"),
      sourceInput: grab("source-input") as HTMLTextAreaElement,
      load: grab("load") as HTMLButtonElement,
      store: grab("store"),
      stack: grab("stack"),
      cfg: grab("cfg"),
      banner: grab("banner"),
      connection: grab("connection"),
      stepFwd: grab("step-fwd") as HTMLButtonElement,
      stepBwd: grab("step-bwd") as HTMLButtonElement,
      run: grab("run") as HTMLButtonElement,
      runBack: grab("run-back") as HTMLButtonElement,
      scrubber: grab("scrubber") as HTMLInputElement,
      scrubLabel: grab("scrub-label"),
    };
    this.el.load.addEventListener("click", () => void this.load());
    this.el.stepFwd.addEventListener("click", () => void this.act((c) => c.step("fwd")));
    this.el.stepBwd.addEventListener("click", () => void this.act((c) => c.step("bwd")));
    this.el.run.addEventListener("click", () => void this.act((c) => c.continueRun("fwd")));
    this.el.runBack.addEventListener("click", () => void this.act((c) => c.continueRun("bwd")));
    this.el.scrubber.addEventListener("change", () => void this.scrub());
  }

  async load(): Promise<void> {
    this.channel?.close();
    this.el.banner.textContent = "";
    this.el.banner.className = "banner";
    try {
      const created = await createSession(this.baseUrl, this.el.sourceInput.value);
      this.program = created.program;
      this.channel = new Channel(
        channelUrl(this.baseUrl, created.sessionId),
        browserSocket,
      );
      this.channel.onDisconnect = () => this.showDisconnected();
      this.el.connection.hidden = true;
      this.maxHistory = 0;
      this.apply(created.snapshot);
    } catch (e) {
      if (e instanceof SessionCreateError) {
        this.el.banner.className = "banner error";
        this.el.banner.textContent = e.diagnostics.join("\n");
      } else {
        this.showDisconnected();
      }
    }
  }

  private showDisconnected(): void {
    this.el.connection.hidden = false;
  }

  private async act(op: (c: Channel) => Promise<Snapshot>): Promise<void> {
    if (!this.channel || this.busy) return;
    this.busy = true;
    try {
      this.apply(await op(this.channel));
    } catch {
      this.showDisconnected();
    } finally {
      this.busy = false;
    }
  }

  private async scrub(): Promise<void> {
    if (!this.snapshot) return;
    const plan = scrubPlan(this.snapshot.historyIndex, Number(this.el.scrubber.value));
    if (plan) await this.act((c) => c.step(plan.direction, plan.count));
  }

  private async toggleBp(label: number): Promise<void> {
    if (!this.snapshot) return;
    const next = toggleBreakpoint(this.snapshot.breakpoints, label);
    await this.act(async (c) => {
      await c.setBreakpoints(next);
      return c.inspect();
    });
  }

  apply(snapshot: Snapshot): void {
    this.snapshot = snapshot;
    this.maxHistory = Math.max(this.maxHistory, snapshot.historyIndex);
    this.renderSource();
    this.renderStore();
    this.renderStack();
    this.renderCfg();
    this.renderControls();
    this.renderBanner();
  }

  private renderSource(): void {
    if (!this.program || !this.snapshot) return;
    this.el.source.replaceChildren();
    const spans = highlights(this.snapshot, this.program);
    for (const segment of sourceSegments(this.program.source, spans)) {
      const node = document.createElement("span");
      node.textContent = segment.text;
      if (segment.role !== "plain") node.className = `hl-${segment.role}`;
      this.el.source.appendChild(node);
    }
  }

  private renderStore(): void {
    if (!this.snapshot) return;
    const table = document.createElement("table");
    for (const row of storeRows(this.snapshot.store)) {
      const tr = table.insertRow();
      tr.insertCell().textContent = row.name;
      tr.insertCell().textContent = String(row.value);
    }
    if (table.rows.length === 0) {
      const tr = table.insertRow();
      tr.insertCell().textContent = "(empty)";
    }
    this.el.store.replaceChildren(table);
  }

  private renderStack(): void {
    if (!this.snapshot) return;
    const list = document.createElement("ol");
    for (const text of stackRows(this.snapshot.stack)) {
      const item = document.createElement("li");
      item.textContent = text;
      list.appendChild(item);
    }
    this.el.stack.replaceChildren(
      this.snapshot.stack.length > 0 ? list : document.createTextNode("(empty)"),
    );
  }

  private renderCfg(): void {
    if (!this.program || !this.snapshot) return;
    const snapshot = this.snapshot;
    const svgNs = "http://www.w3.org/2000/svg";
    this.el.cfg.replaceChildren();
    for (const unit of this.program.cfg.units) {
      const layout = layoutUnit(unit);
      const svg = document.createElementNS(svgNs, "svg");
      svg.setAttribute("width", String(layout.layers * CELL_W + 20));
      svg.setAttribute("height", String(layout.rows * CELL_H + 40));
      const title = document.createElementNS(svgNs, "text");
      title.setAttribute("x", "4");
      title.setAttribute("y", "14");
      title.textContent = unit.name;
      svg.appendChild(title);
      const pos = new Map(
        layout.nodes.map((n) => [
          n.label,
          { x: n.layer * CELL_W + 60, y: n.row * CELL_H + 50 },
        ]),
      );
      for (const edge of layout.edges) {
        const a = pos.get(edge.from);
        const b = pos.get(edge.to);
        if (!a || !b) continue;
        const line = document.createElementNS(svgNs, "line");
        line.setAttribute("x1", String(a.x));
        line.setAttribute("y1", String(a.y));
        line.setAttribute("x2", String(b.x));
        line.setAttribute("y2", String(b.y));
        line.setAttribute("class", edge.back ? "edge back" : "edge");
        svg.appendChild(line);
      }
      for (const node of layout.nodes) {
        const p = pos.get(node.label)!;
        const group = document.createElementNS(svgNs, "g");
        group.setAttribute("class", this.nodeClass(node.label));
        group.addEventListener("click", () => void this.toggleBp(node.label));
        const circle = document.createElementNS(svgNs, "circle");
        circle.setAttribute("cx", String(p.x));
        circle.setAttribute("cy", String(p.y));
        circle.setAttribute("r", "16");
        const text = document.createElementNS(svgNs, "text");
        text.setAttribute("x", String(p.x));
        text.setAttribute("y", String(p.y + 4));
        text.setAttribute("text-anchor", "middle");
        text.textContent = String(node.label);
        const caption = document.createElementNS(svgNs, "text");
        caption.setAttribute("x", String(p.x));
        caption.setAttribute("y", String(p.y + 30));
        caption.setAttribute("text-anchor", "middle");
        caption.setAttribute("class", "caption");
        caption.textContent = node.text;
        group.append(circle, text, caption);
        svg.appendChild(group);
      }
      this.el.cfg.appendChild(svg);
      void snapshot;
    }
  }

  private nodeClass(label: number): string {
    if (!this.snapshot) return "node";
    const classes = ["node"];
    if (label === this.snapshot.next) classes.push("pc-next");
    if (label === this.snapshot.prev) classes.push("pc-prev");
    if (this.snapshot.breakpoints.includes(label)) classes.push("bp");
    return classes.join(" ");
  }

  private renderControls(): void {
    if (!this.snapshot) return;
    const state = controlState(this.snapshot);
    this.el.stepFwd.disabled = !state.stepForward;
    this.el.stepBwd.disabled = !state.stepBackward;
    this.el.run.disabled = !state.run;
    this.el.runBack.disabled = !state.runBack;
    this.el.scrubber.max = String(this.maxHistory);
    this.el.scrubber.value = String(this.snapshot.historyIndex);
    this.el.scrubLabel.textContent = `${this.snapshot.historyIndex} / ${this.maxHistory}`;
  }

  private renderBanner(): void {
    if (!this.snapshot) return;
    const b = banner(this.snapshot);
    this.el.banner.className = b ? `banner ${b.kind}` : "banner";
    this.el.banner.textContent = b ? b.text : "";
  }
}
