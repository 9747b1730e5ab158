/**
 * Editor-agnostic plugin core: session state, the role/state-gated
 * command tree, save capture with debounce, and the interactive command
 * flows. The VS Code layer in extension.ts is a thin adapter over this.
 *
 * Workspace files are mutated only by startChallenge, resetWorkspace,
 * resume, and the answer flow's snapshot pull, and each of those writes
 * server-provided or cached bytes unchanged.
 */

import { ApiError, EndSummary, HttpClient, SnapshotPayload, TicketSummary } from "./api";
import { CommandRunner, FileSystemPort, PluginConfig, UiPort } from "./ports";
import { bytesEqual, captureWorkspace, decodeSnapshot, writeFiles } from "./snapshot";
import { OutboundQueue } from "./queue";

export type Command =
  | "login"
  | "start-challenge"
  | "resume"
  | "compile"
  | "reset-workspace"
  | "help"
  | "answer"
  | "end-session";

export interface ActiveSession {
  sessionId: string;
  questionId: string | null;
  mode: string;
}

export interface PluginState {
  loggedIn: boolean;
  canAnswer: boolean;
  active: ActiveSession | null;
}

export class PluginCore {
  readonly client: HttpClient;
  private readonly queue: OutboundQueue;
  private token: string | null = null;
  private canAnswer = false;
  private active: ActiveSession | null = null;
  private initialSnapshot: Record<string, Uint8Array> | null = null;
  private saveTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly config: PluginConfig,
    private readonly fs: FileSystemPort,
    private readonly ui: UiPort,
    private readonly runCommand: CommandRunner | null = null,
  ) {
    this.client = new HttpClient(config.serverUrl);
    this.queue = new OutboundQueue({
      onOffline: (label) =>
        this.ui.error(`server unreachable; ${label} queued and will retry in order`),
      onItemError: (label, error) => this.ui.error(`${label} failed: ${describe(error)}`),
    });
  }

  state(): PluginState {
    return { loggedIn: this.token !== null, canAnswer: this.canAnswer, active: this.active };
  }

  /** Commands available right now; session commands are gated out until a
   * session exists, everything but login until a token is cached. */
  commandTree(): Command[] {
    if (this.token === null) return ["login"];
    const commands: Command[] = ["login"];
    if (this.active === null) {
      commands.push("start-challenge", "resume");
    } else {
      commands.push("compile", "reset-workspace", "help", "end-session");
    }
    if (this.canAnswer) commands.push("answer");
    return commands;
  }

  // -- login ---------------------------------------------------------------

  async login(pastedToken: string): Promise<boolean> {
    const trimmed = pastedToken.trim();
    this.client.setToken(trimmed);
    const probe = await this.client.probeToken();
    if (!probe.valid) {
      this.client.setToken(this.token);
      this.ui.error("login failed: token rejected");
      return false;
    }
    this.token = trimmed;
    this.canAnswer = probe.canAnswer;
    this.ui.info(probe.canAnswer ? "logged in (teaching assistant)" : "logged in");
    return true;
  }

  // -- challenge lifecycle ---------------------------------------------------

  async startChallenge(questionId: string | null, mode: string): Promise<void> {
    this.requireLogin();
    if (this.active !== null) {
      this.ui.error("a session is already active; end it first");
      return;
    }
    let started;
    try {
      started = await this.client.startSession(questionId, mode);
    } catch (error) {
      if (error instanceof ApiError && error.code === "ResumeAvailable") {
        this.ui.info("a timed-out session exists for this question; use resume to continue it");
        return;
      }
      throw error;
    }
    if (started.snapshot !== null) {
      const files = decodeSnapshot(started.snapshot);
      await writeFiles(this.fs, files);
      this.initialSnapshot = files;
    } else {
      // Free debugging on local code: the current workspace is the baseline.
      this.initialSnapshot = await this.fs.readWorkspace();
    }
    this.active = { sessionId: started.session_id, questionId, mode };
    this.ui.info(`session ${started.session_id} started (${mode})`);
  }

  async resume(questionId: string | null = null): Promise<void> {
    this.requireLogin();
    if (this.active !== null) {
      this.ui.error("a session is already active");
      return;
    }
    let resumed;
    try {
      resumed = await this.client.resumeSession(questionId);
    } catch (error) {
      if (error instanceof ApiError && error.code === "NothingToResume") {
        this.ui.info("nothing to resume");
        return;
      }
      throw error;
    }
    await writeFiles(this.fs, decodeSnapshot(resumed.snapshot));
    this.active = { sessionId: resumed.session_id, questionId, mode: "resumed" };
    if (questionId !== null) {
      try {
        const initial = await this.client.initialSnapshot(questionId);
        this.initialSnapshot = decodeSnapshot(initial.snapshot);
      } catch {
        this.initialSnapshot = null; // free-debug sources have no initial
      }
    }
    this.ui.info(`session ${resumed.session_id} resumed`);
  }

  async endSession(completed: boolean): Promise<EndSummary | null> {
    const session = this.requireSession();
    this.cancelPendingSave();
    await this.queue.flush();
    const summary = await this.client.endSession(session.sessionId, completed);
    this.active = null;
    this.initialSnapshot = null;
    this.ui.info(
      `session ended: ${summary.debug_count} debugs in ${summary.elapsed_seconds.toFixed(1)}s`,
    );
    return summary;
  }

  // -- save capture ----------------------------------------------------------

  /**
   * Called on every editor save. Saves within the debounce window coalesce
   * into one captured snapshot (the workspace state when the timer fires).
   */
  onSave(): void {
    if (this.active === null) return;
    if (this.saveTimer !== null) clearTimeout(this.saveTimer);
    this.saveTimer = setTimeout(() => {
      this.saveTimer = null;
      void this.captureAndEnqueueSave();
    }, this.config.debounceMs);
  }

  /** Capture immediately, bypassing the debounce (used on demand). */
  async flushSaves(): Promise<void> {
    if (this.saveTimer !== null) {
      clearTimeout(this.saveTimer);
      this.saveTimer = null;
      await this.captureAndEnqueueSave();
    }
    await this.queue.flush();
  }

  private async captureAndEnqueueSave(): Promise<void> {
    const session = this.active;
    if (session === null) return;
    const snapshot = await captureWorkspace(this.fs);
    this.queue.enqueue("save upload", async () => {
      await this.client.recordEvent(session.sessionId, "Save", snapshot);
    });
  }

  private cancelPendingSave(): void {
    if (this.saveTimer !== null) {
      clearTimeout(this.saveTimer);
      this.saveTimer = null;
    }
  }

  // -- compile ---------------------------------------------------------------

  async compile(): Promise<boolean> {
    const session = this.requireSession();
    let ok: boolean;
    let log = "";
    if (this.config.compileCommand) {
      if (this.runCommand === null) {
        this.ui.error("no command runner available for the configured compile command");
        return false;
      }
      const result = await this.runCommand(this.config.compileCommand);
      ok = result.exitCode === 0;
      log = result.output;
    } else {
      // Default: parse-check the workspace via the server-side checker.
      const snapshot = await captureWorkspace(this.fs);
      const checked = await this.client.check(snapshot);
      ok = checked.ok;
      log = checked.errors.map((e) => `${e.path}:${e.line}:${e.col}: ${e.message}`).join("\n");
    }
    this.queue.enqueue("compile result", async () => {
      await this.client.recordEvent(session.sessionId, "Compile", undefined, ok, log || undefined);
    });
    this.ui.info(ok ? "compile ok" : `compile failed:\n${log}`);
    return ok;
  }

  // -- reset -------------------------------------------------------------------

  async resetWorkspace(): Promise<void> {
    const session = this.requireSession();
    if (this.initialSnapshot === null) {
      if (session.questionId === null) {
        this.ui.error("no initial snapshot cached for this session");
        return;
      }
      const fetched = await this.client.initialSnapshot(session.questionId);
      this.initialSnapshot = decodeSnapshot(fetched.snapshot);
    }
    const initial = this.initialSnapshot;
    await writeFiles(this.fs, initial);
    const current = await this.fs.readWorkspace();
    const extras = Object.keys(current).filter((path) => !(path in initial));
    if (extras.length > 0) {
      const yes = await this.ui.confirm(
        `reset will delete ${extras.length} file(s) not in the initial snapshot: ${extras.join(", ")}`,
      );
      if (yes) {
        for (const path of extras) {
          await this.fs.deleteFile(path);
        }
      }
    }
    this.queue.enqueue("reset event", async () => {
      await this.client.recordEvent(session.sessionId, "Reset");
    });
    this.ui.info("workspace reset to the initial snapshot");
  }

  // -- help and answer ----------------------------------------------------------

  async help(formText: string): Promise<string | null> {
    const session = this.requireSession();
    await this.flushSaves();
    try {
      const ticket = await this.client.createTicket(session.sessionId, formText);
      this.ui.info(`help ticket ${ticket.ticket_id} submitted`);
      return ticket.ticket_id;
    } catch (error) {
      if (error instanceof ApiError) {
        this.ui.error(`help failed: ${error.code}`);
        return null;
      }
      throw error;
    }
  }

  async openTickets(): Promise<TicketSummary[]> {
    this.requireLogin();
    const tickets = await this.client.listTickets();
    return tickets.filter((t) => t.status === "Open");
  }

  /** Pull an asker's snapshot into a local troubleshooting session. */
  async pullTicket(ticketId: string): Promise<void> {
    this.requireLogin();
    if (!this.canAnswer) {
      this.ui.error("answering tickets is a teaching-assistant command");
      return;
    }
    if (this.active !== null) {
      this.ui.error("end the current session before troubleshooting a ticket");
      return;
    }
    const started = await this.client.startSession(ticketId, "Troubleshoot");
    if (started.snapshot === null) {
      this.ui.error("ticket has no snapshot attached");
      return;
    }
    const files = decodeSnapshot(started.snapshot);
    await writeFiles(this.fs, files);
    this.initialSnapshot = files;
    this.active = { sessionId: started.session_id, questionId: ticketId, mode: "Troubleshoot" };
    this.ui.info(`troubleshooting ${ticketId}; workspace now holds the asker's code`);
  }

  /** Submit the current workspace as the answer and close the session. */
  async submitAnswer(ticketId: string, explanation: string): Promise<TicketSummary | null> {
    this.requireLogin();
    await this.flushSaves();
    const snapshot = await captureWorkspace(this.fs);
    try {
      const answered = await this.client.answerTicket(ticketId, explanation, snapshot);
      if (this.active !== null && this.active.questionId === ticketId) {
        await this.endSession(true);
      }
      this.ui.info(`ticket ${ticketId} answered`);
      return answered;
    } catch (error) {
      if (error instanceof ApiError) {
        this.ui.error(`answer failed: ${error.code}`);
        return null;
      }
      throw error;
    }
  }

  // -- internals -----------------------------------------------------------------

  pendingUploads(): number {
    return this.queue.length;
  }

  dispose(): void {
    this.cancelPendingSave();
    this.queue.dispose();
  }

  private requireLogin(): void {
    if (this.token === null) {
      throw new Error("login required");
    }
  }

  private requireSession(): ActiveSession {
    this.requireLogin();
    if (this.active === null) {
      throw new Error("no active session");
    }
    return this.active;
  }

  /** Byte-exact comparison helper for reset verification and tests. */
  static workspacesEqual(a: Record<string, Uint8Array>, b: Record<string, Uint8Array>): boolean {
    const aPaths = Object.keys(a).sort();
    const bPaths = Object.keys(b).sort();
    if (aPaths.length !== bPaths.length) return false;
    return aPaths.every((p, i) => p === bPaths[i] && bytesEqual(a[p], b[p]));
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.code}: ${error.message}`;
  return String(error);
}
