/** Typed client for the docgen HTTP API.
 *
 * The UI never assembles documentary content itself; everything rendered
 * comes back from these calls. The session token arrives in the X-Session-Id
 * response header and is replayed on subsequent requests so history and
 * coverage survive page reloads (the server also sets a cookie; the header
 * keeps things explicit for non-browser callers and tests).
 */

export interface TopicCount {
  topic: string;
  clip_count: number;
}

export interface ManifestClip {
  id: string;
  interviewee_id: string;
  interviewee_name: string;
  duration_s: number;
  question_index: number;
  keywords: string[];
  media_uri: string;
  excerpt?: string;
}

export interface DocumentaryManifest {
  seed: number;
  total_duration_s: number;
  selection: { topics: string[] };
  constraints: {
    min_total_s: number;
    max_total_s: number;
    max_clips_per_speaker: number;
    require_topic_coverage: boolean;
    max_restarts: number;
  };
  clips: ManifestClip[];
}

export interface CoverageReport {
  generations: number;
  skipped: number;
  distinct_clips_viewed: number;
  topics_viewed: number;
  vocabulary_size: number;
  topic_fraction: number;
  speakers_viewed: number;
  roster_size: number;
  speaker_fraction: number;
  mean_consecutive_overlap: number | null;
}

export interface SessionLogEntry {
  timestamp: string;
  topics: string[];
  seed: number;
  clip_ids: string[];
  total_duration_s: number;
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class InfeasibleError extends ApiError {
  constructor(
    readonly reason: string | null,
    readonly detail: string,
  ) {
    super(`infeasible: ${detail}`, 422);
    this.name = "InfeasibleError";
  }
}

const SESSION_HEADER = "X-Session-Id";

export class ApiClient {
  sessionId: string | null = null;

  constructor(readonly baseUrl: string = "") {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const headers = new Headers(init?.headers);
    if (this.sessionId) headers.set(SESSION_HEADER, this.sessionId);
    const response = await fetch(this.baseUrl + path, { ...init, headers });
    const returned = response.headers.get(SESSION_HEADER);
    if (returned) this.sessionId = returned;
    return response;
  }

  async topics(): Promise<TopicCount[]> {
    const response = await this.request("/api/topics");
    if (!response.ok) throw new ApiError("failed to load topics", response.status);
    return (await response.json()) as TopicCount[];
  }

  async generate(topics: string[], seed?: number): Promise<DocumentaryManifest> {
    const body: Record<string, unknown> = { topics };
    if (seed !== undefined) body.seed = seed;
    const response = await this.request("/api/generate", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (response.status === 422) {
      const payload = (await response.json()) as { reason: string | null; detail: string };
      throw new InfeasibleError(payload.reason, payload.detail);
    }
    if (!response.ok) {
      const payload = (await response.json().catch(() => ({}))) as { error?: string; topic?: string };
      const what = payload.topic ? `${payload.error}: ${payload.topic}` : (payload.error ?? "request failed");
      throw new ApiError(what, response.status);
    }
    return (await response.json()) as DocumentaryManifest;
  }

  async coverage(): Promise<CoverageReport | null> {
    if (!this.sessionId) return null;
    const response = await this.request(`/api/sessions/${this.sessionId}/coverage`);
    if (response.status === 404) return null;
    if (!response.ok) throw new ApiError("failed to load coverage", response.status);
    return (await response.json()) as CoverageReport;
  }

  async history(): Promise<SessionLogEntry[]> {
    if (!this.sessionId) return [];
    const response = await this.request(`/api/sessions/${this.sessionId}/log`);
    if (response.status === 404) return [];
    if (!response.ok) throw new ApiError("failed to load history", response.status);
    const payload = (await response.json()) as { entries: SessionLogEntry[] };
    return payload.entries;
  }
}
