// Pure view-model builders for the session board. Everything here is a
// deterministic function of API payloads so it can be unit tested without a
// DOM; rendering lives in board.ts and heatmap.ts.

import type {
  CardStatus,
  CoverageCellPayload,
  InstancePayload,
  InterrogativeName,
  SessionPayload,
} from './types.js';

/** The seven interrogatives in canonical rank order; columns always render in this order. */
export const COLUMN_ORDER: readonly InterrogativeName[] = [
  'who',
  'what',
  'which',
  'where',
  'how',
  'why',
  'when',
] as const;

/** One CSS class per card status; the mapping is 1:1 with the four statuses. */
export const STATUS_CLASS: Readonly<Record<CardStatus, string>> = {
  pending: 'status-pending',
  answered: 'status-answered',
  skipped: 'status-skipped',
  gated_out: 'status-gated',
} as const;

export interface CardModel {
  id: string;
  concernId: string;
  group: string;
  interrogative: InterrogativeName;
  prompt: string;
  status: CardStatus;
  /** True when the service currently lists this card as askable. */
  unblocked: boolean;
  gatekeeper: boolean;
  /** Instance id of the answered question supplying candidate items, if bound. */
  candidateSource: string | null;
  /** Items from the source's answer; null when unbound or the source is unanswered. */
  candidateItems: string[] | null;
  tags: string[];
  answerText: string | null;
}

export interface ColumnModel {
  interrogative: InterrogativeName;
  cards: CardModel[];
}

export interface HeatmapCellModel {
  group: string;
  interrogative: InterrogativeName;
  total: number;
  answered: number;
  skipped: number;
  gatedOut: number;
  pending: number;
  /** answered/total in [0, 1]; 0 for empty cells. */
  intensity: number;
  /** True when the cell contains gated-out questions; rendered as a distinct mark. */
  gated: boolean;
}

export interface BoardViewModel {
  sessionId: string;
  mode: string;
  groups: string[];
  columns: ColumnModel[];
  heatmap: HeatmapCellModel[];
}

function answersById(session: SessionPayload): Map<string, { text: string; items: string[] | null }> {
  const map = new Map<string, { text: string; items: string[] | null }>();
  for (const answer of session.answers) {
    map.set(answer.instance_id, { text: answer.text, items: answer.items });
  }
  return map;
}

/**
 * Items offered to a candidate-bound card: the source answer's items. Null
 * when the card is unbound or the source has not been answered yet, in which
 * case the card cannot offer a choice at all.
 */
export function candidateItems(
  instance: InstancePayload,
  session: SessionPayload,
): string[] | null {
  if (instance.candidates_from === null) {
    return null;
  }
  const source = answersById(session).get(instance.candidates_from);
  if (source === undefined || source.items === null) {
    return null;
  }
  return [...source.items];
}

export function buildCard(
  instance: InstancePayload,
  session: SessionPayload,
  unblockedIds: ReadonlySet<string>,
): CardModel {
  const answer = answersById(session).get(instance.id);
  return {
    id: instance.id,
    concernId: instance.concern_id,
    group: instance.group,
    interrogative: instance.interrogative,
    prompt: instance.prompt,
    status: instance.status,
    unblocked: unblockedIds.has(instance.id),
    gatekeeper: instance.gatekeeper,
    candidateSource: instance.candidates_from,
    candidateItems: candidateItems(instance, session),
    tags: [...instance.tags],
    answerText: answer === undefined ? null : answer.text,
  };
}

/**
 * Group instances into the seven canonical columns. Every column is always
 * present, in rank order, even when empty; cards keep the session's
 * instance order within their column.
 */
export function buildColumns(
  session: SessionPayload,
  unblocked: readonly InstancePayload[],
): ColumnModel[] {
  const unblockedIds = new Set(unblocked.map((q) => q.id));
  const columns = COLUMN_ORDER.map((interrogative) => ({
    interrogative,
    cards: [] as CardModel[],
  }));
  const byInterrogative = new Map(columns.map((c) => [c.interrogative, c]));
  for (const instance of session.instances) {
    byInterrogative
      .get(instance.interrogative)
      ?.cards.push(buildCard(instance, session, unblockedIds));
  }
  return columns;
}

export function buildHeatmap(
  cells: readonly CoverageCellPayload[],
): HeatmapCellModel[] {
  return cells.map((cell) => ({
    group: cell.group,
    interrogative: cell.interrogative,
    total: cell.total,
    answered: cell.answered,
    skipped: cell.skipped,
    gatedOut: cell.gated_out,
    pending: cell.pending,
    intensity: cell.total === 0 ? 0 : cell.answered / cell.total,
    gated: cell.gated_out > 0,
  }));
}

export function buildBoard(
  session: SessionPayload,
  unblocked: readonly InstancePayload[],
  coverageCells: readonly CoverageCellPayload[],
): BoardViewModel {
  const groups: string[] = [];
  for (const instance of session.instances) {
    if (!groups.includes(instance.group)) {
      groups.push(instance.group);
    }
  }
  return {
    sessionId: session.id,
    mode: session.mode,
    groups,
    columns: buildColumns(session, unblocked),
    heatmap: buildHeatmap(coverageCells),
  };
}
