/**
 * Minimal typings for the editor API surface the adapter uses. The real
 * module is provided by the editor host at runtime; tests never load it
 * (they drive PluginCore through the ports directly).
 */

declare module "vscode" {
  export interface Disposable {
    dispose(): void;
  }

  export interface ExtensionContext {
    subscriptions: Disposable[];
  }

  export interface Uri {
    fsPath: string;
    toString(): string;
  }

  export namespace Uri {
    function file(path: string): Uri;
    function joinPath(base: Uri, ...segments: string[]): Uri;
  }

  export interface TextDocument {
    uri: Uri;
    fileName: string;
  }

  export interface WorkspaceFolder {
    uri: Uri;
    name: string;
  }

  export interface FileSystem {
    readFile(uri: Uri): Thenable<Uint8Array>;
    writeFile(uri: Uri, content: Uint8Array): Thenable<void>;
    delete(uri: Uri, options?: { recursive?: boolean }): Thenable<void>;
  }

  export namespace workspace {
    const workspaceFolders: readonly WorkspaceFolder[] | undefined;
    const fs: FileSystem;
    function onDidSaveTextDocument(listener: (doc: TextDocument) => void): Disposable;
    function findFiles(include: string, exclude?: string | null): Thenable<Uri[]>;
    function asRelativePath(pathOrUri: Uri | string): string;
    function getConfiguration(section?: string): {
      get<T>(key: string, defaultValue: T): T;
    };
  }

  export namespace window {
    function showInformationMessage(message: string): Thenable<string | undefined>;
    function showErrorMessage(message: string): Thenable<string | undefined>;
    function showWarningMessage(
      message: string,
      ...items: string[]
    ): Thenable<string | undefined>;
    function showInputBox(options?: {
      prompt?: string;
      password?: boolean;
      placeHolder?: string;
    }): Thenable<string | undefined>;
    function showQuickPick(
      items: string[],
      options?: { placeHolder?: string },
    ): Thenable<string | undefined>;
  }

  export namespace commands {
    function registerCommand(command: string, callback: (...args: unknown[]) => unknown): Disposable;
  }
}
