/** Pure view-state transitions; every invariant the UI relies on lives here.
 *
 * State is immutable and only derived from server responses: selected topics
 * must come from the fetched vocabulary, the playback index stays inside the
 * current documentary, and history entries are appended in order with the
 * coverage fractions observed at the time.
 */

import type { CoverageReport, DocumentaryManifest, TopicCount } from "./api.js";

export interface HistoryEntry {
  seed: number;
  topics: string[];
  totalDuration: number;
  /** Fractions as observed right after the generation; null when restored
   * from the server log without a live coverage snapshot. */
  topicFraction: number | null;
  speakerFraction: number | null;
}

export interface ViewState {
  topics: TopicCount[];
  selected: ReadonlySet<string>;
  doc: DocumentaryManifest | null;
  clipIndex: number;
  history: HistoryEntry[];
  coverage: CoverageReport | null;
  error: string | null;
  busy: boolean;
}

export function initialState(): ViewState {
  return {
    topics: [],
    selected: new Set(),
    doc: null,
    clipIndex: 0,
    history: [],
    coverage: null,
    error: null,
    busy: false,
  };
}

export function withTopics(state: ViewState, topics: TopicCount[]): ViewState {
  const known = new Set(topics.map((t) => t.topic));
  const selected = new Set([...state.selected].filter((t) => known.has(t)));
  return { ...state, topics, selected };
}

export function toggleTopic(state: ViewState, topic: string): ViewState {
  if (!state.topics.some((t) => t.topic === topic)) return state;
  const selected = new Set(state.selected);
  if (selected.has(topic)) {
    selected.delete(topic);
  } else {
    selected.add(topic);
  }
  return { ...state, selected };
}

export function canGenerate(state: ViewState): boolean {
  return state.selected.size > 0 && !state.busy;
}

export function withBusy(state: ViewState, busy: boolean): ViewState {
  return { ...state, busy };
}

export function withDocumentary(state: ViewState, doc: DocumentaryManifest): ViewState {
  return { ...state, doc, clipIndex: 0, error: null };
}

export function withCoverage(state: ViewState, coverage: CoverageReport | null): ViewState {
  if (!state.doc || !coverage) return { ...state, coverage };
  const entry: HistoryEntry = {
    seed: state.doc.seed,
    topics: state.doc.selection.topics,
    totalDuration: state.doc.total_duration_s,
    topicFraction: coverage.topic_fraction,
    speakerFraction: coverage.speaker_fraction,
  };
  return { ...state, coverage, history: [...state.history, entry] };
}

export function withRestoredHistory(state: ViewState, entries: HistoryEntry[]): ViewState {
  return { ...state, history: entries };
}

export function withError(state: ViewState, message: string): ViewState {
  return { ...state, error: message };
}

export function clearError(state: ViewState): ViewState {
  return { ...state, error: null };
}

export function advanceClip(state: ViewState): ViewState {
  if (!state.doc) return state;
  const next = Math.min(state.clipIndex + 1, state.doc.clips.length - 1);
  return { ...state, clipIndex: next };
}

export function seekClip(state: ViewState, index: number): ViewState {
  if (!state.doc || index < 0 || index >= state.doc.clips.length) return state;
  return { ...state, clipIndex: index };
}
