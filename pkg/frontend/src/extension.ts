/** Editor adapter: wires commands, the save hook, and workspace access to
 * the core. All behavior lives in PluginCore. */

import * as vscode from "vscode";
import { exec } from "child_process";

import { Command, PluginCore } from "./core";
import { DEFAULT_CONFIG, FileSystemPort, PluginConfig, UiPort } from "./ports";

function readConfig(): PluginConfig {
  const section = vscode.workspace.getConfiguration("debugtrace");
  return {
    serverUrl: section.get("serverUrl", DEFAULT_CONFIG.serverUrl),
    compileCommand: section.get("compileCommand", DEFAULT_CONFIG.compileCommand),
    debounceMs: section.get("debounceMs", DEFAULT_CONFIG.debounceMs),
  };
}

class WorkspaceFs implements FileSystemPort {
  private root(): vscode.Uri {
    const folders = vscode.workspace.workspaceFolders;
    if (!folders || folders.length === 0) {
      throw new Error("open a workspace folder first");
    }
    return folders[0].uri;
  }

  async readWorkspace(): Promise<Record<string, Uint8Array>> {
    const files: Record<string, Uint8Array> = {};
    const uris = await vscode.workspace.findFiles("**/*", "**/node_modules/**");
    for (const uri of uris) {
      files[vscode.workspace.asRelativePath(uri)] = await vscode.workspace.fs.readFile(uri);
    }
    return files;
  }

  async writeFile(path: string, data: Uint8Array): Promise<void> {
    await vscode.workspace.fs.writeFile(vscode.Uri.joinPath(this.root(), path), data);
  }

  async deleteFile(path: string): Promise<void> {
    await vscode.workspace.fs.delete(vscode.Uri.joinPath(this.root(), path));
  }
}

class WindowUi implements UiPort {
  info(message: string): void {
    void vscode.window.showInformationMessage(message);
  }

  error(message: string): void {
    void vscode.window.showErrorMessage(message);
  }

  async confirm(message: string): Promise<boolean> {
    const choice = await vscode.window.showWarningMessage(message, "Yes", "No");
    return choice === "Yes";
  }
}

function runShell(command: string): Promise<{ exitCode: number; output: string }> {
  return new Promise((resolve) => {
    exec(command, (error, stdout, stderr) => {
      resolve({ exitCode: error ? 1 : 0, output: `${stdout}${stderr}` });
    });
  });
}

export function activate(context: vscode.ExtensionContext): void {
  const core = new PluginCore(readConfig(), new WorkspaceFs(), new WindowUi(), runShell);

  const gated = (command: Command, action: () => Promise<void>) => async () => {
    if (!core.commandTree().includes(command)) {
      void vscode.window.showErrorMessage(`"${command}" is not available right now`);
      return;
    }
    try {
      await action();
    } catch (error) {
      void vscode.window.showErrorMessage(String(error));
    }
  };

  context.subscriptions.push(
    vscode.commands.registerCommand(
      "debugtrace.login",
      gated("login", async () => {
        const token = await vscode.window.showInputBox({
          prompt: "paste the token issued by the platform login page",
          password: true,
        });
        if (token) await core.login(token);
      }),
    ),
    vscode.commands.registerCommand(
      "debugtrace.startChallenge",
      gated("start-challenge", async () => {
        const questions = await core.client.listQuestions();
        const picked = await vscode.window.showQuickPick(
          questions.map((q) => `${q.question_id}: ${q.title} (difficulty ${q.difficulty})`),
          { placeHolder: "choose a question" },
        );
        if (!picked) return;
        const questionId = picked.split(":")[0];
        const mode = await vscode.window.showQuickPick(["Training", "Rank", "FreeDebug"], {
          placeHolder: "mode",
        });
        if (mode) await core.startChallenge(questionId, mode);
      }),
    ),
    vscode.commands.registerCommand(
      "debugtrace.compile",
      gated("compile", async () => {
        await core.compile();
      }),
    ),
    vscode.commands.registerCommand(
      "debugtrace.resetWorkspace",
      gated("reset-workspace", async () => {
        await core.resetWorkspace();
      }),
    ),
    vscode.commands.registerCommand(
      "debugtrace.help",
      gated("help", async () => {
        const text = await vscode.window.showInputBox({ prompt: "describe the problem" });
        if (text) await core.help(text);
      }),
    ),
    vscode.commands.registerCommand(
      "debugtrace.answer",
      gated("answer", async () => {
        const open = await core.openTickets();
        if (open.length === 0) {
          void vscode.window.showInformationMessage("no open tickets");
          return;
        }
        const picked = await vscode.window.showQuickPick(
          open.map((t) => `${t.ticket_id}: ${t.form_text}`),
          { placeHolder: "pick a ticket to troubleshoot" },
        );
        if (!picked) return;
        const ticketId = picked.split(":")[0];
        await core.pullTicket(ticketId);
        const explanation = await vscode.window.showInputBox({
          prompt: "fix the code locally, then enter the explanation to submit",
        });
        if (explanation) await core.submitAnswer(ticketId, explanation);
      }),
    ),
    vscode.commands.registerCommand(
      "debugtrace.resume",
      gated("resume", async () => {
        await core.resume();
      }),
    ),
    vscode.commands.registerCommand(
      "debugtrace.endSession",
      gated("end-session", async () => {
        const completed = await vscode.window.showQuickPick(["completed", "abandoned"], {
          placeHolder: "how did it go?",
        });
        if (completed) await core.endSession(completed === "completed");
      }),
    ),
    vscode.workspace.onDidSaveTextDocument(() => core.onSave()),
    { dispose: () => core.dispose() },
  );
}

export function deactivate(): void {}
