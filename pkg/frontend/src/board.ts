// Session board: seven columns in canonical order, one card per question
// instance. Rendering is split from mutation plumbing so the column markup
// can be tested without a server; mountBoard wires the forms to the API and
// repaints from each mutation response without reloading the page.
//
// The service is the only authority on unblocking: a card offers an answer
// form exactly when the latest response lists it as unblocked. Every
// mutation waits for the API; there is no optimistic state.

import { ApiClient, ApiRequestError } from './api.js';
import { renderHeatmap } from './heatmap.js';
import {
  STATUS_CLASS,
  buildBoard,
  type BoardViewModel,
  type CardModel,
} from './viewmodel.js';
import type { VerdictName } from './types.js';

export interface AnswerForm {
  text: string;
  items: string[] | null;
  verdict: VerdictName | null;
}

export interface BoardHandlers {
  onAnswer(card: CardModel, form: AnswerForm): void;
  onSkip(card: CardModel): void;
  onGate(card: CardModel, verdict: VerdictName, affectedTag: string): void;
}

const NO_HANDLERS: BoardHandlers = {
  onAnswer: () => undefined,
  onSkip: () => undefined,
  onGate: () => undefined,
};

/** Render the seven columns of a board view-model into `root`. */
export function renderColumns(
  root: HTMLElement,
  vm: BoardViewModel,
  handlers: BoardHandlers = NO_HANDLERS,
): void {
  root.innerHTML = '';
  for (const column of vm.columns) {
    const section = document.createElement('section');
    section.className = 'column';
    section.dataset.interrogative = column.interrogative;

    const heading = document.createElement('h2');
    heading.textContent = column.interrogative;
    section.appendChild(heading);

    const list = document.createElement('div');
    list.className = 'cards';
    for (const card of column.cards) {
      list.appendChild(renderCard(card, handlers));
    }
    section.appendChild(list);
    root.appendChild(section);
  }
}

function renderCard(card: CardModel, handlers: BoardHandlers): HTMLElement {
  const article = document.createElement('article');
  article.className = `card ${STATUS_CLASS[card.status]}`;
  article.classList.toggle('unblocked', card.unblocked);
  article.dataset.instance = card.id;
  article.dataset.group = card.group;

  const header = document.createElement('header');
  const prompt = document.createElement('p');
  prompt.className = 'prompt';
  prompt.textContent = card.prompt;
  header.appendChild(prompt);
  if (card.gatekeeper) {
    const badge = document.createElement('span');
    badge.className = 'badge gatekeeper';
    badge.textContent = 'gatekeeper';
    header.appendChild(badge);
  }
  article.appendChild(header);

  const meta = document.createElement('p');
  meta.className = 'card-meta';
  meta.textContent = card.group;
  if (card.tags.length > 0) {
    meta.textContent += ` · ${card.tags.join(', ')}`;
  }
  article.appendChild(meta);

  if (card.candidateSource !== null) {
    const link = document.createElement('p');
    link.className = 'candidate-link';
    link.dataset.source = card.candidateSource;
    link.textContent = `choices from ${card.candidateSource}`;
    article.appendChild(link);
  }

  if (card.status === 'answered' && card.answerText !== null) {
    const answer = document.createElement('p');
    answer.className = 'answer-text';
    answer.textContent = card.answerText;
    article.appendChild(answer);
  }

  const message = document.createElement('p');
  message.className = 'card-message';
  message.hidden = true;
  article.appendChild(message);

  // Forms appear only on cards the service reports as askable; blocked
  // cards stay inert until a refresh says otherwise.
  if (card.status === 'pending' && card.unblocked) {
    article.appendChild(renderAnswerForm(card, handlers));
  } else if (card.status === 'answered' && card.interrogative === 'why') {
    article.appendChild(renderGateForm(card, handlers));
  }
  return article;
}

function renderAnswerForm(card: CardModel, handlers: BoardHandlers): HTMLFormElement {
  const form = document.createElement('form');
  form.className = 'answer-form';

  const text = document.createElement('input');
  text.type = 'text';
  text.name = 'text';
  text.placeholder = 'answer';
  form.appendChild(text);

  let itemPicker: HTMLSelectElement | null = null;
  if (card.candidateItems !== null) {
    // A bound card only ever offers the supplier's items; free entries are
    // not representable in this control.
    itemPicker = document.createElement('select');
    itemPicker.multiple = true;
    itemPicker.name = 'items';
    for (const item of card.candidateItems) {
      const option = document.createElement('option');
      option.value = item;
      option.textContent = item;
      itemPicker.appendChild(option);
    }
    form.appendChild(itemPicker);
  }

  let verdictPicker: HTMLSelectElement | null = null;
  if (card.interrogative === 'why') {
    verdictPicker = document.createElement('select');
    verdictPicker.name = 'verdict';
    for (const value of ['', 'proceed', 'not_needed']) {
      const option = document.createElement('option');
      option.value = value;
      option.textContent = value === '' ? 'no verdict' : value;
      verdictPicker.appendChild(option);
    }
    form.appendChild(verdictPicker);
  }

  const submit = document.createElement('button');
  submit.type = 'submit';
  submit.textContent = 'Answer';
  form.appendChild(submit);

  const skip = document.createElement('button');
  skip.type = 'button';
  skip.className = 'skip';
  skip.textContent = 'Skip';
  skip.addEventListener('click', () => handlers.onSkip(card));
  form.appendChild(skip);

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    const items =
      itemPicker === null
        ? null
        : Array.from(itemPicker.selectedOptions).map((o) => o.value);
    const verdict =
      verdictPicker !== null && verdictPicker.value !== ''
        ? (verdictPicker.value as VerdictName)
        : null;
    handlers.onAnswer(card, { text: text.value, items, verdict });
  });
  return form;
}

function renderGateForm(card: CardModel, handlers: BoardHandlers): HTMLFormElement {
  const form = document.createElement('form');
  form.className = 'gate-form';

  const verdict = document.createElement('select');
  verdict.name = 'verdict';
  for (const value of ['proceed', 'not_needed'] as const) {
    const option = document.createElement('option');
    option.value = value;
    option.textContent = value;
    verdict.appendChild(option);
  }
  form.appendChild(verdict);

  const tag = document.createElement('input');
  tag.type = 'text';
  tag.name = 'affected_tag';
  tag.placeholder = 'affected tag';
  if (card.tags.length > 0) {
    const listId = `tags-${card.id.replace(/[^a-z0-9-]/gi, '-')}`;
    const datalist = document.createElement('datalist');
    datalist.id = listId;
    for (const value of card.tags) {
      const option = document.createElement('option');
      option.value = value;
      datalist.appendChild(option);
    }
    form.appendChild(datalist);
    tag.setAttribute('list', listId);
  }
  form.appendChild(tag);

  const submit = document.createElement('button');
  submit.type = 'submit';
  submit.textContent = 'Apply verdict';
  form.appendChild(submit);

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    handlers.onGate(card, verdict.value as VerdictName, tag.value);
  });
  return form;
}

export function showCardMessage(
  columnsRoot: HTMLElement,
  instanceId: string,
  text: string,
): void {
  const card = columnsRoot.querySelector<HTMLElement>(
    `[data-instance="${instanceId}"]`,
  );
  const message = card?.querySelector<HTMLElement>('.card-message');
  if (message) {
    message.textContent = text;
    message.hidden = false;
  }
}

export interface BoardController {
  /** Stable containers; repaints replace their children, never the nodes. */
  readonly columnsRoot: HTMLElement;
  readonly heatmapRoot: HTMLElement;
  readonly banner: HTMLElement;
  /** Fetch session and coverage and repaint from scratch. */
  load(): Promise<void>;
  /** The view-model behind the current paint. */
  current(): BoardViewModel | null;
}

/**
 * Mount a live board for one session. All mutations round-trip through the
 * API and repaint from the response plus a fresh coverage fetch, so after
 * any successful submit the board shows exactly what a fresh load would.
 */
export function mountBoard(
  root: HTMLElement,
  api: ApiClient,
  sessionId: string,
): BoardController {
  root.innerHTML = '';

  const banner = document.createElement('div');
  banner.className = 'error-banner';
  banner.hidden = true;
  root.appendChild(banner);

  const title = document.createElement('h1');
  title.className = 'board-title';
  title.textContent = `Session ${sessionId}`;
  root.appendChild(title);

  const columnsRoot = document.createElement('div');
  columnsRoot.className = 'board-columns';
  root.appendChild(columnsRoot);

  const heatmapHeading = document.createElement('h2');
  heatmapHeading.textContent = 'Coverage';
  root.appendChild(heatmapHeading);

  const heatmapRoot = document.createElement('div');
  heatmapRoot.className = 'board-heatmap';
  root.appendChild(heatmapRoot);

  let vm: BoardViewModel | null = null;

  function paint(next: BoardViewModel): void {
    vm = next;
    banner.hidden = true;
    renderColumns(columnsRoot, next, handlers);
    renderHeatmap(heatmapRoot, next.heatmap);
  }

  function showBanner(text: string): void {
    banner.textContent = text;
    banner.hidden = false;
  }

  async function repaintFrom(response: {
    session: Parameters<typeof buildBoard>[0];
    unblocked: Parameters<typeof buildBoard>[1];
  }): Promise<void> {
    const coverage = await api.fetchCoverage(sessionId);
    paint(buildBoard(response.session, response.unblocked, coverage.cells));
  }

  function reportFailure(card: CardModel, error: unknown): void {
    if (error instanceof ApiRequestError) {
      if (error.status === 404) {
        showBanner(`${error.code}: ${error.message}`);
      } else {
        showCardMessage(columnsRoot, card.id, `${error.code}: ${error.message}`);
      }
    } else {
      showBanner(String(error));
    }
  }

  const handlers: BoardHandlers = {
    onAnswer(card, form) {
      api
        .submitAnswer(sessionId, {
          instance_id: card.id,
          text: form.text,
          items: form.items,
          verdict: form.verdict,
        })
        .then(repaintFrom)
        .catch((error: unknown) => reportFailure(card, error));
    },
    onSkip(card) {
      api
        .skipQuestion(sessionId, card.id)
        .then(repaintFrom)
        .catch((error: unknown) => reportFailure(card, error));
    },
    onGate(card, verdict, affectedTag) {
      api
        .applyGate(sessionId, {
          instance_id: card.id,
          verdict,
          affected_tag: affectedTag,
        })
        .then(repaintFrom)
        .catch((error: unknown) => reportFailure(card, error));
    },
  };

  return {
    columnsRoot,
    heatmapRoot,
    banner,
    async load(): Promise<void> {
      try {
        const [view, coverage] = await Promise.all([
          api.fetchSession(sessionId),
          api.fetchCoverage(sessionId),
        ]);
        paint(buildBoard(view.session, view.unblocked, coverage.cells));
      } catch (error) {
        if (error instanceof ApiRequestError) {
          showBanner(`${error.code}: ${error.message}`);
        } else {
          showBanner(String(error));
        }
      }
    },
    current(): BoardViewModel | null {
      return vm;
    },
  };
}
