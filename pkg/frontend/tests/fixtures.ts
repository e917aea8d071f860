// Builders for hand-made API payloads used by the unit tests.

import type {
  AnswerPayload,
  CoverageCellPayload,
  InstancePayload,
  SessionPayload,
} from '../src/types.js';

export function instance(overrides: Partial<InstancePayload> & Pick<InstancePayload, 'id' | 'interrogative'>): InstancePayload {
  const concern = overrides.id.split(':')[1] ?? overrides.id;
  return {
    concern_id: concern,
    group: overrides.id.split(':')[0] ?? 'ops',
    prompt: `${capitalize(overrides.interrogative)}? — ${concern}`,
    status: 'pending',
    gatekeeper: false,
    candidates_from: null,
    tags: [],
    ...overrides,
  };
}

export function answer(
  overrides: Partial<AnswerPayload> & Pick<AnswerPayload, 'instance_id'>,
): AnswerPayload {
  return {
    text: 'noted',
    items: null,
    verdict: null,
    timestamp: '2026-08-19T12:00:00+00:00',
    ...overrides,
  };
}

export function sessionWith(
  instances: InstancePayload[],
  answers: AnswerPayload[] = [],
): SessionPayload {
  return {
    id: 'fixture',
    matrix_ref: 'tiny@1',
    graph_ref: 'default@1',
    scope: [{ group: 'ops', tag: null }],
    mode: 'full',
    created: '2026-08-19T10:00:00+00:00',
    graph: { rules: [] },
    instances,
    answers,
  };
}

export function cell(
  overrides: Partial<CoverageCellPayload> &
    Pick<CoverageCellPayload, 'group' | 'interrogative'>,
): CoverageCellPayload {
  return {
    total: 0,
    answered: 0,
    skipped: 0,
    gated_out: 0,
    pending: 0,
    ...overrides,
  };
}

function capitalize(word: string): string {
  return word.charAt(0).toUpperCase() + word.slice(1);
}
