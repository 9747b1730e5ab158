/** Test harness: a real backend server on a temp store, plus node-fs and
 * scripted-UI ports so PluginCore runs end-to-end without an editor. */

import { spawn, spawnSync, ChildProcess } from "child_process";
import * as fs from "fs";
import * as net from "net";
import * as os from "os";
import * as path from "path";

import { FileSystemPort, UiPort } from "../src/ports";

const PYTHON = process.env.DEBUGTRACE_PYTHON ?? "python3";

export interface TestServer {
  url: string;
  storeRoot: string;
  port: number;
  proc: ChildProcess;
  stop(): Promise<void>;
  /** Kill and relaunch on the same port and store (offline-window tests). */
  restart(): Promise<void>;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = net.createServer();
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address && typeof address === "object") {
        const port = address.port;
        srv.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

function addUser(storeRoot: string, user: string, secret: string, role: string): void {
  const result = spawnSync(
    PYTHON,
    ["-m", "debugtrace.cli", "admin", "add-user", "--store", storeRoot, user, secret, role],
    { encoding: "utf-8" },
  );
  if (result.status !== 0) {
    throw new Error(`add-user failed: ${result.stderr}${result.stdout}`);
  }
}

async function waitReady(url: string, timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const response = await fetch(`${url}/api/v1/questions`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("server did not come up");
    await sleep(100);
  }
}

function launch(storeRoot: string, port: number): ChildProcess {
  return spawn(
    PYTHON,
    ["-m", "debugtrace.cli", "serve", "--store", storeRoot, "--listen", `127.0.0.1:${port}`],
    { stdio: "ignore" },
  );
}

export async function startServer(): Promise<TestServer> {
  const storeRoot = fs.mkdtempSync(path.join(os.tmpdir(), "debugtrace-store-"));
  for (const [user, secret, role] of [
    ["student1", "pw1", "Student"],
    ["student2", "pw2", "Student"],
    ["ta1", "pw-ta", "TeachingAssistant"],
    ["teacher1", "pw-teacher", "Teacher"],
  ]) {
    addUser(storeRoot, user, secret, role);
  }
  const port = await freePort();
  let proc = launch(storeRoot, port);
  const url = `http://127.0.0.1:${port}`;
  await waitReady(url);

  const server: TestServer = {
    url,
    storeRoot,
    port,
    get proc() {
      return proc;
    },
    async stop() {
      proc.kill("SIGKILL");
      await sleep(150);
    },
    async restart() {
      proc.kill("SIGKILL");
      await sleep(200);
      proc = launch(storeRoot, port);
      await waitReady(url);
    },
  } as TestServer;
  return server;
}

export async function loginToken(url: string, userId: string, secret: string): Promise<string> {
  const response = await fetch(`${url}/api/v1/login`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ user_id: userId, secret }),
  });
  if (!response.ok) throw new Error(`login failed: ${response.status}`);
  const body = (await response.json()) as { token: string };
  return body.token;
}

export async function publishQuestion(
  url: string,
  token: string,
  initial: Record<string, string>,
  reference: Record<string, string>,
  kind = "Practice",
): Promise<string> {
  const response = await fetch(`${url}/api/v1/questions`, {
    method: "POST",
    headers: { "Content-Type": "application/json", Authorization: token },
    body: JSON.stringify({
      kind,
      title: "test question",
      initial: encodeText(initial),
      reference: encodeText(reference),
      error_classes: ["ParameterError"],
      difficulty: 1,
    }),
  });
  if (!response.ok) throw new Error(`publish failed: ${await response.text()}`);
  const body = (await response.json()) as { question_id: string };
  return body.question_id;
}

export function encodeText(files: Record<string, string>): Record<string, string> {
  const out: Record<string, string> = {};
  for (const [p, text] of Object.entries(files)) {
    out[p] = Buffer.from(text, "utf-8").toString("base64");
  }
  return out;
}

export async function fetchSessionEvents(
  url: string,
  token: string,
  sessionId: string,
): Promise<{ event_id: number; kind: string }[]> {
  const response = await fetch(`${url}/api/v1/sessions/${sessionId}`, {
    headers: { Authorization: token },
  });
  if (!response.ok) throw new Error(`session fetch failed: ${response.status}`);
  const body = (await response.json()) as { events: { event_id: number; kind: string }[] };
  return body.events;
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Directory-backed workspace port. */
export class DirFs implements FileSystemPort {
  constructor(readonly root: string) {
    fs.mkdirSync(root, { recursive: true });
  }

  async readWorkspace(): Promise<Record<string, Uint8Array>> {
    const files: Record<string, Uint8Array> = {};
    const walk = (dir: string) => {
      for (const entry of fs.readdirSync(dir, { withFileTypes: true })) {
        const full = path.join(dir, entry.name);
        if (entry.isDirectory()) walk(full);
        else files[path.relative(this.root, full).split(path.sep).join("/")] = new Uint8Array(fs.readFileSync(full));
      }
    };
    walk(this.root);
    return files;
  }

  async writeFile(rel: string, data: Uint8Array): Promise<void> {
    const full = path.join(this.root, rel);
    fs.mkdirSync(path.dirname(full), { recursive: true });
    fs.writeFileSync(full, data);
  }

  async deleteFile(rel: string): Promise<void> {
    fs.rmSync(path.join(this.root, rel));
  }
}

/** UI port that records messages and answers confirms from a script. */
export class ScriptedUi implements UiPort {
  infos: string[] = [];
  errors: string[] = [];
  confirmAnswers: boolean[] = [];

  info(message: string): void {
    this.infos.push(message);
  }

  error(message: string): void {
    this.errors.push(message);
  }

  async confirm(_message: string): Promise<boolean> {
    return this.confirmAnswers.shift() ?? true;
  }
}

export function tempWorkspace(): DirFs {
  return new DirFs(fs.mkdtempSync(path.join(os.tmpdir(), "debugtrace-ws-")));
}
