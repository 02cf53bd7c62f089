/** Protocol client: session creation over HTTP, methods over the WebSocket
 * channel. The socket interface is injected so tests can run without a
 * browser. */

import type {
  ChannelResponse,
  CreateError,
  CreateResponse,
  Direction,
  Snapshot,
  TimelineRecord,
} from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
  onopen: (() => void) | null;
  onerror: (() => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;
export type FetchLike = (
  url: string,
  init: { method: string; headers: Record<string, string>; body: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class SessionCreateError extends Error {
  constructor(public diagnostics: string[]) {
    super(diagnostics.join("; "));
  }
}

export async function createSession(
  baseUrl: string,
  source: string,
  fetchImpl: FetchLike = fetch,
): Promise<CreateResponse> {
  const response = await fetchImpl(`${baseUrl}/sessions`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ source }),
  });
  const body = (await response.json()) as CreateResponse | CreateError;
  if (response.status !== 200) {
    const diags = (body as CreateError).diagnostics ?? ["session creation failed"];
    throw new SessionCreateError(diags);
  }
  return body as CreateResponse;
}

export function channelUrl(baseUrl: string, sessionId: string): string {
  return `${baseUrl.replace(/^http/, "ws")}/sessions/${sessionId}/channel`;
}

/** Adapt the browser WebSocket to SocketLike, queueing sends until open. */
export function browserSocket(url: string): SocketLike {
  const ws = new WebSocket(url);
  const queued: string[] = [];
  const shim: SocketLike = {
    send: (data) => {
      if (ws.readyState === ws.OPEN) ws.send(data);
      else queued.push(data);
    },
    close: () => ws.close(),
    onmessage: null,
    onclose: null,
    onopen: null,
    onerror: null,
  };
  ws.onopen = () => {
    for (const data of queued.splice(0)) ws.send(data);
    shim.onopen?.();
  };
  ws.onmessage = (event) => shim.onmessage?.({ data: String(event.data) });
  ws.onclose = () => shim.onclose?.();
  ws.onerror = () => shim.onerror?.();
  return shim;
}

interface Pending {
  resolve: (value: unknown) => void;
  reject: (reason: Error) => void;
}

/** JSON-RPC-style request/response channel over one socket. */
export class Channel {
  private socket: SocketLike;
  private nextId = 1;
  private pending = new Map<number, Pending>();
  private closed = false;

  /** Called once when the socket drops (connection-loss banner hook). */
  onDisconnect: (() => void) | null = null;

  constructor(url: string, makeSocket: SocketFactory) {
    this.socket = makeSocket(url);
    this.socket.onmessage = (event) => this.dispatch(JSON.parse(event.data));
    this.socket.onclose = () => this.fail(new Error("connection lost"));
    this.socket.onerror = () => this.fail(new Error("connection lost"));
  }

  private dispatch(message: ChannelResponse): void {
    const entry = this.pending.get(message.id);
    if (!entry) return;
    this.pending.delete(message.id);
    if (message.error) entry.reject(new Error(message.error.message));
    else entry.resolve(message.result);
  }

  private fail(reason: Error): void {
    if (this.closed) return;
    this.closed = true;
    for (const entry of this.pending.values()) entry.reject(reason);
    this.pending.clear();
    this.onDisconnect?.();
  }

  request(method: string, params: Record<string, unknown> = {}): Promise<unknown> {
    if (this.closed) return Promise.reject(new Error("connection lost"));
    const id = this.nextId++;
    const promise = new Promise<unknown>((resolve, reject) => {
      this.pending.set(id, { resolve, reject });
    });
    this.socket.send(JSON.stringify({ id, method, params }));
    return promise;
  }

  step(direction: Direction, count = 1): Promise<Snapshot> {
    return this.request("step", { direction, count }) as Promise<Snapshot>;
  }

  continueRun(direction: Direction): Promise<Snapshot> {
    return this.request("continue", { direction }) as Promise<Snapshot>;
  }

  setBreakpoints(labels: number[]): Promise<{ breakpoints: number[] }> {
    return this.request("setBreakpoints", { labels }) as Promise<{
      breakpoints: number[];
    }>;
  }

  inspect(): Promise<Snapshot> {
    return this.request("inspect") as Promise<Snapshot>;
  }

  timeline(fromIdx = 0, toIdx: number | null = null): Promise<TimelineRecord[]> {
    const params: Record<string, unknown> = { fromIdx };
    if (toIdx !== null) params.toIdx = toIdx;
    return this.request("timeline", params) as Promise<TimelineRecord[]>;
  }

  async dispose(): Promise<void> {
    await this.request("dispose");
    this.close();
  }

  close(): void {
    this.closed = true;
    this.socket.close();
  }
}
