/**
 * Editor-agnostic ports. The core talks to the workspace and the user
 * through these, so the same logic runs under VS Code and under tests.
 */

export interface FileSystemPort {
  /** Relative path -> bytes for every file in the workspace. */
  readWorkspace(): Promise<Record<string, Uint8Array>>;
  writeFile(path: string, data: Uint8Array): Promise<void>;
  deleteFile(path: string): Promise<void>;
}

export interface UiPort {
  info(message: string): void;
  error(message: string): void;
  /** Modal yes/no; used before deleting files a reset would remove. */
  confirm(message: string): Promise<boolean>;
}

export interface PluginConfig {
  serverUrl: string;
  compileCommand: string;
  debounceMs: number;
}

/** Runs a project-specific compile command; null when none is configured. */
export type CommandRunner = (
  command: string,
) => Promise<{ exitCode: number; output: string }>;

export const DEFAULT_CONFIG: PluginConfig = {
  serverUrl: "http://127.0.0.1:8700",
  compileCommand: "",
  debounceMs: 500,
};
