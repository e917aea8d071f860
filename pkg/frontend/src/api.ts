// Thin fetch client over the service's /api routes. The service is the sole
// authority on question unblocking; nothing here re-implements its rules.

import type {
  CoverageResponse,
  ErrorPayload,
  InterrogativeName,
  MatrixResponse,
  ModeName,
  MutationResponse,
  SessionCreateResponse,
  SessionListResponse,
  SessionViewResponse,
  VerdictName,
} from './types.js';

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(payload: ErrorPayload) {
    super(payload.message);
    this.name = 'ApiRequestError';
    this.status = payload.status;
    this.code = payload.code;
  }
}

async function parseError(response: Response): Promise<ApiRequestError> {
  let payload: ErrorPayload;
  try {
    payload = (await response.json()) as ErrorPayload;
  } catch {
    payload = {
      status: response.status,
      code: 'BadResponse',
      message: `unexpected response ${response.status}`,
    };
  }
  return new ApiRequestError(payload);
}

export interface SessionCreateRequest {
  group?: string;
  scope?: Array<{ group: string; tag?: string | null }>;
  mode?: ModeName;
  id?: string;
}

export interface ConcernCreateRequest {
  id: string;
  text: string;
  interrogative: InterrogativeName;
  groups: string[];
  question?: string;
  tags?: string[];
}

export class ApiClient {
  private readonly base: string;

  constructor(base = '') {
    this.base = base.replace(/\/$/, '');
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.base}${path}`, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  fetchMatrix(): Promise<MatrixResponse> {
    return this.request<MatrixResponse>('/api/matrix');
  }

  addConcern(body: ConcernCreateRequest): Promise<{ added: { id: string } }> {
    return this.post('/api/matrix/concerns', body);
  }

  listSessions(offset = 0, limit = 50): Promise<SessionListResponse> {
    return this.request<SessionListResponse>(
      `/api/sessions?offset=${offset}&limit=${limit}`,
    );
  }

  createSession(body: SessionCreateRequest): Promise<SessionCreateResponse> {
    return this.post('/api/sessions', body);
  }

  fetchSession(sessionId: string): Promise<SessionViewResponse> {
    return this.request<SessionViewResponse>(
      `/api/sessions/${encodeURIComponent(sessionId)}`,
    );
  }

  fetchCoverage(sessionId: string): Promise<CoverageResponse> {
    return this.request<CoverageResponse>(
      `/api/sessions/${encodeURIComponent(sessionId)}/coverage`,
    );
  }

  submitAnswer(
    sessionId: string,
    body: {
      instance_id: string;
      text?: string;
      items?: string[] | null;
      verdict?: VerdictName | null;
    },
  ): Promise<MutationResponse> {
    return this.post(
      `/api/sessions/${encodeURIComponent(sessionId)}/answers`,
      body,
    );
  }

  skipQuestion(sessionId: string, instanceId: string): Promise<MutationResponse> {
    return this.post(`/api/sessions/${encodeURIComponent(sessionId)}/skip`, {
      instance_id: instanceId,
    });
  }

  applyGate(
    sessionId: string,
    body: { instance_id: string; verdict: VerdictName; affected_tag: string },
  ): Promise<MutationResponse> {
    return this.post(
      `/api/sessions/${encodeURIComponent(sessionId)}/gate`,
      body,
    );
  }
}
