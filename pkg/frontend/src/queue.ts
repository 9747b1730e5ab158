/**
 * Ordered outbound delivery.
 *
 * Items send strictly FIFO. A network-level failure keeps the head item
 * in place and retries after a delay, so order survives outages and an
 * item the server has acknowledged is never sent again. Application
 * errors (the server answered, but with an error code) drop the item and
 * surface it; retrying those would never succeed.
 */

import { NetworkError } from "./api";

export interface QueueCallbacks {
  onOffline?: (label: string) => void;
  onItemError?: (label: string, error: unknown) => void;
  retryDelayMs?: number;
}

interface Item {
  label: string;
  send: () => Promise<void>;
}

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export class OutboundQueue {
  private items: Item[] = [];
  private waiters: (() => void)[] = [];
  private pumping = false;
  private offlineNotified = false;
  private disposed = false;

  constructor(private readonly callbacks: QueueCallbacks = {}) {}

  get length(): number {
    return this.items.length;
  }

  enqueue(label: string, send: () => Promise<void>): void {
    this.items.push({ label, send });
    void this.pump();
  }

  /** Resolves once every queued item has been sent or dropped. */
  flush(): Promise<void> {
    if (this.items.length === 0 && !this.pumping) return Promise.resolve();
    return new Promise((resolve) => this.waiters.push(resolve));
  }

  dispose(): void {
    this.disposed = true;
  }

  private async pump(): Promise<void> {
    if (this.pumping) return;
    this.pumping = true;
    try {
      while (this.items.length > 0 && !this.disposed) {
        const head = this.items[0];
        try {
          await head.send();
          this.items.shift();
          this.offlineNotified = false;
        } catch (error) {
          if (error instanceof NetworkError) {
            if (!this.offlineNotified) {
              this.offlineNotified = true;
              this.callbacks.onOffline?.(head.label);
            }
            await sleep(this.callbacks.retryDelayMs ?? 250);
          } else {
            this.items.shift();
            this.callbacks.onItemError?.(head.label, error);
          }
        }
      }
    } finally {
      this.pumping = false;
      if (this.items.length === 0) {
        const waiters = this.waiters;
        this.waiters = [];
        for (const resolve of waiters) resolve();
      }
    }
  }
}
