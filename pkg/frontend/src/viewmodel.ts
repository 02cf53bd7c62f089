/** Pure view state derived from service snapshots. The UI never computes
 * language semantics; everything here is presentation of what the service
 * reported. */

import type {
  Direction,
  FrameJson,
  LabelInfo,
  ProgramInfo,
  Snapshot,
  StoreJson,
} from "./protocol.js";

export interface StoreRow {
  name: string;
  value: number;
}

/** Canonical store as sorted display rows; array cells render as a[i]. */
export function storeRows(store: StoreJson): StoreRow[] {
  const rows: StoreRow[] = [];
  for (const [name, value] of Object.entries(store.scalars)) {
    rows.push({ name, value });
  }
  for (const [name, cells] of Object.entries(store.arrays)) {
    for (const [index, value] of Object.entries(cells)) {
      rows.push({ name: `${name}[${index}]`, value });
    }
  }
  rows.sort((a, b) => (a.name < b.name ? -1 : a.name > b.name ? 1 : 0));
  return rows;
}

/** One stack frame as its display string, e.g. "loop1 ⟨7, 13⟩". */
export function frameLabel(frame: FrameJson): string {
  if ("label" in frame) {
    return `${frame.kind} ⟨${frame.label}⟩`;
  }
  return `${frame.kind} ⟨${frame.l1}, ${frame.l2}⟩`;
}

/** Stack rows, top frame first (the order the service sends). */
export function stackRows(frames: FrameJson[]): string[] {
  return frames.map(frameLabel);
}

export interface ControlState {
  stepForward: boolean;
  stepBackward: boolean;
  run: boolean;
  runBack: boolean;
}

/** Forward controls disable at the terminal, backward at the initial
 * configuration; everything disables after a runtime error. */
export function controlState(snapshot: Snapshot): ControlState {
  const stuck = snapshot.reason === "error";
  return {
    stepForward: !snapshot.atTerminal && !stuck,
    stepBackward: !snapshot.atInitial && !stuck,
    run: !snapshot.atTerminal && !stuck,
    runBack: !snapshot.atInitial && !stuck,
  };
}

export interface Banner {
  kind: "info" | "success" | "pause" | "error";
  text: string;
}

function storeSummary(store: StoreJson): string {
  const rows = storeRows(store);
  if (rows.length === 0) return "empty store";
  return rows.map((r) => `${r.name}=${r.value}`).join(", ");
}

export function banner(snapshot: Snapshot): Banner | null {
  switch (snapshot.reason) {
    case "terminal":
      return { kind: "success", text: `Terminated: ${storeSummary(snapshot.store)}` };
    case "initial":
      return { kind: "info", text: "At initial configuration (empty history behind)" };
    case "breakpoint":
      return { kind: "pause", text: `Paused at breakpoint (label ${snapshot.next})` };
    case "error":
      return {
        kind: "error",
        text: `${snapshot.error?.class ?? "Error"}: ${snapshot.error?.message ?? ""}`,
      };
    default:
      if (snapshot.atTerminal) {
        return { kind: "success", text: `Terminated: ${storeSummary(snapshot.store)}` };
      }
      return null;
  }
}

export interface HighlightSpan {
  label: number;
  role: "prev" | "next";
  start: number;
  end: number;
}

/** Source spans for the two program-counter labels. */
export function highlights(snapshot: Snapshot, program: ProgramInfo): HighlightSpan[] {
  const spans: HighlightSpan[] = [];
  const add = (label: number, role: "prev" | "next") => {
    const info: LabelInfo | undefined = program.labels[String(label)];
    if (info) spans.push({ label, role, start: info.start, end: info.end });
  };
  add(snapshot.prev, "prev");
  if (snapshot.next !== snapshot.prev) add(snapshot.next, "next");
  return spans;
}

export interface SourceSegment {
  text: string;
  role: "plain" | "prev" | "next";
}

/** Slice the source into plain/highlighted segments (non-overlapping spans;
 * when prev and next touch the same span the "next" role wins). */
export function sourceSegments(
  source: string,
  spans: HighlightSpan[],
): SourceSegment[] {
  const ordered = [...spans].sort((a, b) => a.start - b.start || (a.role === "next" ? -1 : 1));
  const segments: SourceSegment[] = [];
  let pos = 0;
  for (const span of ordered) {
    if (span.start < pos) continue;
    if (span.start > pos) segments.push({ text: source.slice(pos, span.start), role: "plain" });
    segments.push({ text: source.slice(span.start, span.end), role: span.role });
    pos = span.end;
  }
  if (pos < source.length) segments.push({ text: source.slice(pos), role: "plain" });
  return segments;
}

export interface ScrubPlan {
  direction: Direction;
  count: number;
}

/** Jump the timeline scrubber by computed steps, never by state restore. */
export function scrubPlan(currentIndex: number, targetIndex: number): ScrubPlan | null {
  if (targetIndex === currentIndex) return null;
  return targetIndex > currentIndex
    ? { direction: "fwd", count: targetIndex - currentIndex }
    : { direction: "bwd", count: currentIndex - targetIndex };
}

/** Toggle one label in a breakpoint set (clicking a CFG node). */
export function toggleBreakpoint(current: number[], label: number): number[] {
  const set = new Set(current);
  if (set.has(label)) set.delete(label);
  else set.add(label);
  return [...set].sort((a, b) => a - b);
}
