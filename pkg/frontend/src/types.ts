// Payload types mirroring the w6h service JSON. One schema, two transports:
// these are the same documents the service stores, so field names follow the
// wire format (snake_case) rather than local convention.

export type InterrogativeName =
  | 'who'
  | 'what'
  | 'which'
  | 'where'
  | 'how'
  | 'why'
  | 'when';

export type CardStatus = 'pending' | 'answered' | 'skipped' | 'gated_out';

export type VerdictName = 'proceed' | 'not_needed';

export type ModeName = 'full' | 'triage';

export interface InstancePayload {
  id: string;
  concern_id: string;
  group: string;
  interrogative: InterrogativeName;
  prompt: string;
  status: CardStatus;
  gatekeeper: boolean;
  candidates_from: string | null;
  tags: string[];
}

export interface AnswerPayload {
  instance_id: string;
  text: string;
  items: string[] | null;
  verdict: VerdictName | null;
  timestamp: string;
}

export interface ScopeEntryPayload {
  group: string;
  tag: string | null;
}

export interface SessionPayload {
  id: string;
  matrix_ref: string;
  graph_ref: string;
  scope: ScopeEntryPayload[];
  mode: ModeName;
  created: string;
  graph: unknown;
  instances: InstancePayload[];
  answers: AnswerPayload[];
}

export interface CoverageCellPayload {
  group: string;
  interrogative: InterrogativeName;
  total: number;
  answered: number;
  skipped: number;
  gated_out: number;
  pending: number;
}

export interface SessionViewResponse {
  session: SessionPayload;
  unblocked: InstancePayload[];
}

export interface SessionCreateResponse extends SessionViewResponse {
  id: string;
  pending: number;
}

export interface MutationResponse extends SessionViewResponse {
  answered?: string;
  skipped?: string;
  gated?: string;
}

export interface CoverageResponse {
  cells: CoverageCellPayload[];
}

export interface SessionSummary {
  id: string;
  created: string;
  mode: ModeName;
  matrix_ref: string;
  pending: number;
}

export interface SessionListResponse {
  sessions: SessionSummary[];
  offset: number;
  limit: number;
  total: number;
}

export interface GroupPayload {
  id: string;
  display_name: string;
}

export interface ConcernPayload {
  id: string;
  text: string;
  interrogative: InterrogativeName;
  groups: string[];
  question?: string;
  tags?: string[];
  gatekeeper?: boolean;
  candidates_from?: string | null;
}

export interface MatrixResponse {
  format_version: string;
  kind: string;
  name: string;
  version: string;
  groups: GroupPayload[];
  concerns: ConcernPayload[];
}

export interface ErrorPayload {
  status: number;
  code: string;
  message: string;
}
