/** Typed client for the versesmith /v1 JSON API. */

export interface GeneratorInfo {
  name: string;
  width: number;
  lines_per_verse: number;
}

export interface CandidateView {
  index: number;
  text: string;
  score: number;
}

export interface SessionView {
  id: string;
  generator: string;
  status: "active" | "completed";
  revision: number;
  accepted_lines: string[];
  candidates: CandidateView[];
  width: number;
  lines_per_verse: number;
}

/** A structured error answered by the service ({code, message}). */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<never> {
  let code = "unknown_error";
  let message = `request failed with status ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ApiError(response.status, code, message);
}

export class Client {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  async listGenerators(): Promise<GeneratorInfo[]> {
    const body = await this.request<{ generators: GeneratorInfo[] }>("/v1/generators");
    return body.generators;
  }

  createSession(starter: string, generator: string, width?: number): Promise<SessionView> {
    return this.request<SessionView>("/v1/sessions", {
      method: "POST",
      body: JSON.stringify(width === undefined ? { starter, generator } : { starter, generator, width }),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request<SessionView>(`/v1/sessions/${id}`);
  }

  choose(id: string, index: number, revision: number): Promise<SessionView> {
    return this.request<SessionView>(`/v1/sessions/${id}/choose`, {
      method: "POST",
      body: JSON.stringify({ index, revision }),
    });
  }

  regenerate(id: string, revision: number): Promise<SessionView> {
    return this.request<SessionView>(`/v1/sessions/${id}/regenerate`, {
      method: "POST",
      body: JSON.stringify({ revision }),
    });
  }

  undo(id: string, revision: number): Promise<SessionView> {
    return this.request<SessionView>(`/v1/sessions/${id}/undo`, {
      method: "POST",
      body: JSON.stringify({ revision }),
    });
  }

  async exportText(id: string): Promise<string> {
    const response = await fetch(`${this.baseUrl}/v1/sessions/${id}/export`);
    if (!response.ok) await parseError(response);
    return response.text();
  }
}
