/** Workspace <-> wire-format snapshot conversions (byte-exact). */

import { SnapshotPayload } from "./api";
import { FileSystemPort } from "./ports";

export function toBase64(data: Uint8Array): string {
  return Buffer.from(data).toString("base64");
}

export function fromBase64(text: string): Uint8Array {
  return new Uint8Array(Buffer.from(text, "base64"));
}

export function encodeSnapshot(files: Record<string, Uint8Array>): SnapshotPayload {
  const payload: SnapshotPayload = {};
  for (const [path, data] of Object.entries(files)) {
    payload[path] = toBase64(data);
  }
  return payload;
}

export function decodeSnapshot(payload: SnapshotPayload): Record<string, Uint8Array> {
  const files: Record<string, Uint8Array> = {};
  for (const [path, text] of Object.entries(payload)) {
    files[path] = fromBase64(text);
  }
  return files;
}

export async function captureWorkspace(fs: FileSystemPort): Promise<SnapshotPayload> {
  return encodeSnapshot(await fs.readWorkspace());
}

/** Overwrite the workspace with the given files, byte-identically. */
export async function writeFiles(
  fs: FileSystemPort,
  files: Record<string, Uint8Array>,
): Promise<void> {
  for (const [path, data] of Object.entries(files)) {
    await fs.writeFile(path, data);
  }
}

export function bytesEqual(a: Uint8Array, b: Uint8Array): boolean {
  if (a.length !== b.length) return false;
  for (let i = 0; i < a.length; i++) {
    if (a[i] !== b[i]) return false;
  }
  return true;
}
