// Request scheduling for live slider dragging: debounce the trigger, allow
// any number of requests in flight, but apply only the newest response.
// Each request gets a sequence number; a response is discarded when a
// newer one has already been applied.

export class Debouncer {
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(private readonly delayMs: number) {}

  schedule(fn: () => void): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      fn();
    }, this.delayMs);
  }

  cancel(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
  }
}

export class LatestWins {
  private issued = 0;
  private applied = 0;

  /** Mark a new request and get its sequence number. */
  next(): number {
    this.issued += 1;
    return this.issued;
  }

  /** True when the response for `seq` is still the newest; records it. */
  accept(seq: number): boolean {
    if (seq <= this.applied) return false;
    this.applied = seq;
    return true;
  }
}
