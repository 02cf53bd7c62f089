/** Wire types of the rjanus debug service, declared verbatim. */

export interface StoreJson {
  scalars: Record<string, number>;
  arrays: Record<string, Record<string, number>>;
}

export type FrameJson =
  | { kind: "call" | "uncall"; label: number }
  | { kind: "if_true" | "if_false"; l1: number; l2: number }
  | { kind: "loop1" | "loop2"; l1: number; l2: number };

export type StopReason =
  | "initial"
  | "stepped"
  | "terminal"
  | "breakpoint"
  | "error"
  | "inspect";

export interface Snapshot {
  prev: number;
  next: number;
  store: StoreJson;
  stack: FrameJson[];
  reason: StopReason;
  error: { class: string; message: string } | null;
  atTerminal: boolean;
  atInitial: boolean;
  historyIndex: number;
  breakpoints: number[];
}

export interface LabelInfo {
  text: string;
  unit: string;
  start: number;
  end: number;
  line: number;
  col: number;
}

export interface CfgUnit {
  name: string;
  edges: [number, number][];
  blocks: Record<string, string>;
}

export interface ProgramInfo {
  source: string;
  labels: Record<string, LabelInfo>;
  cfg: { units: CfgUnit[] };
}

export interface CreateResponse {
  sessionId: string;
  snapshot: Snapshot;
  program: ProgramInfo;
}

export interface CreateError {
  diagnostics: string[];
}

export interface TimelineRecord {
  idx: number;
  dir: "fwd" | "bwd";
  rule: string;
  prev: number;
  next: number;
  stack: FrameJson[];
  store: StoreJson;
}

export type Direction = "fwd" | "bwd";

export interface ChannelRequest {
  id: number;
  method: "step" | "continue" | "setBreakpoints" | "inspect" | "timeline" | "dispose";
  params?: Record<string, unknown>;
}

export interface ChannelResponse {
  id: number;
  result?: unknown;
  error?: { message: string };
}
