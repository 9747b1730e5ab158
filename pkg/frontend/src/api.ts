/**
 * Wire protocol types and HTTP client for the telemetry platform.
 *
 * Snapshots travel as JSON objects mapping relative path to base64 bytes.
 * Server errors carry a stable `error` code which callers surface verbatim.
 */

export type SnapshotPayload = Record<string, string>;

export interface SessionStart {
  session_id: string;
  snapshot_id: string | null;
  snapshot: SnapshotPayload | null;
}

export interface ResumeResult {
  session_id: string;
  snapshot_id: string;
  snapshot: SnapshotPayload;
}

export interface EventAck {
  event_id: number;
}

export interface CheckResult {
  ok: boolean;
  errors: { path: string; line: number; col: number; message: string }[];
}

export interface QuestionSummary {
  question_id: string;
  kind: string;
  title: string;
  difficulty: number;
  published: boolean;
}

export interface TicketSummary {
  ticket_id: string;
  session_id: string;
  question_id: string | null;
  asker_id: string;
  form_text: string;
  snapshot_id: string;
  status: "Open" | "Answered";
}

export interface EndSummary {
  session_id: string;
  debug_count: number;
  elapsed_seconds: number;
  completed: boolean;
  labels: string[];
}

export type EventKind = "Save" | "Compile" | "Run" | "Help" | "Reset";

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

/** Network-level failure (server unreachable); retryable, unlike ApiError. */
export class NetworkError extends Error {}

async function parseError(response: Response): Promise<ApiError> {
  let code = `HTTP${response.status}`;
  let message = response.statusText;
  try {
    const body = (await response.json()) as { error?: string; message?: string };
    if (body.error) code = body.error;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(code, message, response.status);
}

export class HttpClient {
  constructor(
    private readonly baseUrl: string,
    private token: string | null = null,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = this.token;
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}/api/v1${path}`, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new NetworkError(String(err));
    }
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  listQuestions(): Promise<QuestionSummary[]> {
    return this.request("GET", "/questions");
  }

  initialSnapshot(questionId: string): Promise<{ snapshot_id: string; snapshot: SnapshotPayload }> {
    return this.request("GET", `/questions/${encodeURIComponent(questionId)}/initial-snapshot`);
  }

  startSession(questionId: string | null, mode: string): Promise<SessionStart> {
    return this.request("POST", "/sessions", { question_id: questionId, mode });
  }

  resumeSession(questionId: string | null): Promise<ResumeResult> {
    return this.request("POST", "/sessions/resume", { question_id: questionId });
  }

  recordEvent(
    sessionId: string,
    kind: EventKind,
    snapshot?: SnapshotPayload,
    compileOk?: boolean,
    errorLog?: string,
  ): Promise<EventAck> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/events`, {
      kind,
      snapshot: snapshot ?? null,
      compile_ok: compileOk ?? null,
      error_log: errorLog ?? null,
    });
  }

  endSession(sessionId: string, completed: boolean): Promise<EndSummary> {
    return this.request("POST", `/sessions/${encodeURIComponent(sessionId)}/end`, { completed });
  }

  check(snapshot: SnapshotPayload): Promise<CheckResult> {
    return this.request("POST", "/check", { snapshot });
  }

  createTicket(sessionId: string, formText: string): Promise<{ ticket_id: string }> {
    return this.request("POST", "/tickets", { session_id: sessionId, form_text: formText });
  }

  listTickets(): Promise<TicketSummary[]> {
    return this.request("GET", "/tickets");
  }

  ticketSnapshot(ticketId: string): Promise<{ snapshot_id: string; snapshot: SnapshotPayload }> {
    return this.request("GET", `/tickets/${encodeURIComponent(ticketId)}/snapshot`);
  }

  answerTicket(ticketId: string, explanation: string, snapshot: SnapshotPayload): Promise<TicketSummary> {
    return this.request("POST", `/tickets/${encodeURIComponent(ticketId)}/answer`, {
      explanation,
      snapshot,
    });
  }

  getSession(sessionId: string): Promise<{ session_id: string; state: string; events: unknown[] }> {
    return this.request("GET", `/sessions/${encodeURIComponent(sessionId)}`);
  }

  /**
   * Probe whether the cached token authenticates, and whether its user may
   * answer tickets. Hitting the answer endpoint with a nonexistent ticket id
   * mutates nothing: students bounce off the role check (Forbidden) while
   * teaching assistants reach the lookup (TicketNotFound).
   */
  async probeToken(): Promise<{ valid: boolean; canAnswer: boolean }> {
    try {
      await this.request("POST", "/tickets/__probe__/answer", { explanation: "", snapshot: {} });
      return { valid: true, canAnswer: true }; // unreachable: probe id never exists
    } catch (err) {
      if (err instanceof ApiError) {
        if (err.code === "TicketNotFound") return { valid: true, canAnswer: true };
        if (err.code === "Forbidden") return { valid: true, canAnswer: false };
        return { valid: false, canAnswer: false };
      }
      throw err;
    }
  }
}
