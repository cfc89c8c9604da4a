/** Sequential clip playback: play each media_uri in order, auto-advancing
 * when the browser fires `ended`. The element's play() may be unavailable
 * (test DOMs) or rejected (autoplay policy); both are tolerated, since the
 * rail and manual advance keep working either way.
 */

import type { DocumentaryManifest } from "./api.js";

export class SequentialPlayer {
  private doc: DocumentaryManifest | null = null;
  private index = 0;
  private readonly onEnded = () => this.next();

  constructor(
    private readonly video: HTMLVideoElement,
    private readonly onIndexChange: (index: number) => void,
  ) {
    video.addEventListener("ended", this.onEnded);
  }

  load(doc: DocumentaryManifest): void {
    this.doc = doc;
    this.index = 0;
    this.playCurrent();
  }

  seek(index: number): void {
    if (!this.doc || index < 0 || index >= this.doc.clips.length) return;
    this.index = index;
    this.playCurrent();
  }

  next(): void {
    if (!this.doc) return;
    if (this.index + 1 >= this.doc.clips.length) return;
    this.index += 1;
    this.playCurrent();
  }

  private playCurrent(): void {
    const clip = this.doc?.clips[this.index];
    if (!clip) return;
    this.video.src = clip.media_uri;
    try {
      const maybePromise = this.video.play?.();
      if (maybePromise && typeof maybePromise.catch === "function") {
        maybePromise.catch(() => {});
      }
    } catch {
      // Playback is best-effort; the clip rail is the source of truth.
    }
    this.onIndexChange(this.index);
  }

  dispose(): void {
    this.video.removeEventListener("ended", this.onEnded);
  }
}
