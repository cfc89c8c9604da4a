/** DOM shell: filter chips, the generate/reconfigure loop, the clip rail,
 * and the session drawer with coverage bars. All content shown here is a
 * straight rendering of API responses; refreshing the page restores history
 * from the server via the session cookie.
 */

import { ApiClient, InfeasibleError } from "./api.js";
import { SequentialPlayer } from "./player.js";
import * as views from "./state.js";
import type { HistoryEntry, ViewState } from "./state.js";

const INFEASIBLE_HINT =
  "No documentary fits those filters within the 2-4 minute window. Try adding more topics.";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function formatDuration(totalSeconds: number): string {
  const minutes = Math.floor(totalSeconds / 60);
  const seconds = totalSeconds % 60;
  return `${minutes}:${seconds.toString().padStart(2, "0")}`;
}

function readSessionCookie(): string | null {
  const match = document.cookie.match(/(?:^|;\s*)docgen_session=([A-Za-z0-9_-]+)/);
  return match?.[1] ?? null;
}

export class App {
  state: ViewState = views.initialState();
  inflight: Promise<void> | null = null;

  private player: SequentialPlayer;
  private readonly filters: HTMLElement;
  private readonly generateButton: HTMLButtonElement;
  private readonly errorBox: HTMLElement;
  private readonly video: HTMLVideoElement;
  private readonly rail: HTMLOListElement;
  private readonly runtime: HTMLElement;
  private readonly topicBar: HTMLElement;
  private readonly topicBarFill: HTMLElement;
  private readonly topicBarLabel: HTMLElement;
  private readonly speakerBar: HTMLElement;
  private readonly speakerBarFill: HTMLElement;
  private readonly speakerBarLabel: HTMLElement;
  private readonly historyList: HTMLOListElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    const header = el("header", "masthead");
    header.append(
      el("h1", undefined, "One story, many cuts"),
      el("p", "tagline", "Pick the angles you care about; every Generate assembles a fresh 2-4 minute documentary from the interview bank."),
    );

    this.filters = el("section", "filters");
    this.filters.setAttribute("aria-label", "Topic filters");

    this.generateButton = el("button", "generate");
    this.generateButton.disabled = true;
    this.generateButton.addEventListener("click", () => {
      this.inflight = this.generate();
    });
    const actions = el("div", "actions");
    actions.append(this.generateButton);

    this.errorBox = el("p", "error");
    this.errorBox.hidden = true;

    this.video = el("video", "screen");
    this.video.setAttribute("controls", "");
    this.rail = el("ol", "rail");
    this.runtime = el("p", "runtime");
    const playback = el("section", "playback");
    playback.append(this.video, this.rail, this.runtime);

    const session = el("aside", "session");
    session.append(el("h2", undefined, "Your session"));
    [this.topicBar, this.topicBarFill, this.topicBarLabel] = this.buildBar("topics seen");
    [this.speakerBar, this.speakerBarFill, this.speakerBarLabel] = this.buildBar("voices heard");
    const coverage = el("div", "coverage");
    coverage.append(this.topicBar, this.speakerBar);
    this.historyList = el("ol", "history");
    session.append(coverage, this.historyList);

    const stage = el("main", "stage");
    stage.append(playback, session);

    this.root.replaceChildren(header, this.filters, actions, this.errorBox, stage);
    this.player = new SequentialPlayer(this.video, (index) => {
      this.state = views.seekClip(this.state, index);
      this.renderRail();
    });
  }

  private buildBar(label: string): [HTMLElement, HTMLElement, HTMLElement] {
    const bar = el("div", "bar");
    const track = el("div", "track");
    const fill = el("span", "fill");
    track.append(fill);
    const caption = el("label", undefined, label);
    bar.append(caption, track);
    return [bar, fill, caption];
  }

  async init(): Promise<void> {
    const topics = await this.api.topics();
    this.state = views.withTopics(this.state, topics);

    const cookieSession = readSessionCookie();
    if (cookieSession) {
      this.api.sessionId = cookieSession;
      const [entries, coverage] = await Promise.all([this.api.history(), this.api.coverage()]);
      const restored: HistoryEntry[] = entries.map((e) => ({
        seed: e.seed,
        topics: e.topics,
        totalDuration: e.total_duration_s,
        topicFraction: null,
        speakerFraction: null,
      }));
      this.state = views.withRestoredHistory(this.state, restored);
      this.state = views.withCoverage(this.state, coverage);
    }
    this.render();
  }

  toggle(topic: string): void {
    this.state = views.toggleTopic(this.state, topic);
    this.render();
  }

  async generate(): Promise<void> {
    if (!views.canGenerate(this.state)) return;
    this.state = views.withBusy(views.clearError(this.state), true);
    this.render();
    try {
      const doc = await this.api.generate([...this.state.selected].sort());
      this.state = views.withDocumentary(this.state, doc);
      this.player.load(doc);
      const coverage = await this.api.coverage();
      this.state = views.withCoverage(this.state, coverage);
    } catch (error) {
      if (error instanceof InfeasibleError) {
        this.state = views.withError(this.state, INFEASIBLE_HINT);
      } else {
        this.state = views.withError(this.state, error instanceof Error ? error.message : String(error));
      }
    } finally {
      this.state = views.withBusy(this.state, false);
      this.render();
    }
  }

  render(): void {
    this.renderFilters();
    this.generateButton.disabled = !views.canGenerate(this.state);
    this.generateButton.textContent = this.state.doc || this.state.history.length ? "Reconfigure" : "Generate";
    this.errorBox.hidden = this.state.error === null;
    this.errorBox.textContent = this.state.error ?? "";
    this.renderRail();
    this.renderSession();
  }

  private renderFilters(): void {
    this.filters.replaceChildren(
      ...this.state.topics.map((topic) => {
        const chip = el("button", "chip", `${topic.topic} (${topic.clip_count})`);
        chip.type = "button";
        chip.dataset.topic = topic.topic;
        chip.setAttribute("aria-pressed", String(this.state.selected.has(topic.topic)));
        chip.addEventListener("click", () => this.toggle(topic.topic));
        return chip;
      }),
    );
  }

  private renderRail(): void {
    const doc = this.state.doc;
    if (!doc) {
      this.rail.replaceChildren();
      this.runtime.textContent = "";
      return;
    }
    this.rail.replaceChildren(
      ...doc.clips.map((clip, index) => {
        const item = el("li", "rail-item");
        if (index === this.state.clipIndex) item.classList.add("current");
        item.dataset.clipId = clip.id;
        item.dataset.duration = String(clip.duration_s);
        item.append(
          el("span", "speaker", clip.interviewee_name),
          el("span", "tags", clip.keywords.join(", ")),
          el("span", "length", `${clip.duration_s}s`),
        );
        item.addEventListener("click", () => this.player.seek(index));
        return item;
      }),
    );
    this.runtime.textContent = `${doc.clips.length} clips, ${formatDuration(doc.total_duration_s)} (seed ${doc.seed})`;
  }

  private renderSession(): void {
    const coverage = this.state.coverage;
    if (coverage) {
      const topicPct = Math.round(coverage.topic_fraction * 100);
      const speakerPct = Math.round(coverage.speaker_fraction * 100);
      this.topicBarFill.style.width = `${topicPct}%`;
      this.topicBarLabel.textContent = `topics seen: ${coverage.topics_viewed}/${coverage.vocabulary_size}`;
      this.speakerBarFill.style.width = `${speakerPct}%`;
      this.speakerBarLabel.textContent = `voices heard: ${coverage.speakers_viewed}/${coverage.roster_size}`;
    }
    this.historyList.replaceChildren(
      ...this.state.history.map((entry, index) => {
        const item = el("li", "history-entry");
        if (entry.topicFraction !== null) item.dataset.topicFraction = String(entry.topicFraction);
        if (entry.speakerFraction !== null) item.dataset.speakerFraction = String(entry.speakerFraction);
        const seed = el("code", "seed", String(entry.seed));
        seed.title = "seed (copy to replay this exact cut)";
        seed.addEventListener("click", () => {
          void navigator.clipboard?.writeText(String(entry.seed)).catch(() => {});
        });
        item.append(
          el("span", "ordinal", `#${index + 1}`),
          el("span", "topics", entry.topics.join(", ")),
          el("span", "length", formatDuration(entry.totalDuration)),
          seed,
        );
        return item;
      }),
    );
  }
}
