// Entry point: a hash-routed single page. The index view lists sessions,
// creates new ones, and offers the concern insertion form; a session route
// mounts the live board.

import { ApiClient, ApiRequestError } from './api.js';
import { mountBoard } from './board.js';
import type { InterrogativeName, ModeName } from './types.js';
import { COLUMN_ORDER } from './viewmodel.js';

const api = new ApiClient();

function appRoot(): HTMLElement {
  const root = document.getElementById('app');
  if (root === null) {
    throw new Error('missing #app container');
  }
  return root;
}

function route(): void {
  const hash = window.location.hash;
  const match = /^#\/session\/(.+)$/.exec(hash);
  if (match !== null && match[1] !== undefined) {
    void mountBoard(appRoot(), api, decodeURIComponent(match[1])).load();
  } else {
    void renderIndex(appRoot());
  }
}

async function renderIndex(root: HTMLElement): Promise<void> {
  root.innerHTML = '';

  const title = document.createElement('h1');
  title.textContent = 'Elicitation sessions';
  root.appendChild(title);

  const status = document.createElement('p');
  status.className = 'index-status';
  root.appendChild(status);

  const list = document.createElement('ul');
  list.className = 'session-list';
  root.appendChild(list);

  root.appendChild(sessionForm(status));
  root.appendChild(concernForm(status));

  try {
    const [sessions, matrix] = await Promise.all([
      api.listSessions(),
      api.fetchMatrix(),
    ]);
    for (const summary of sessions.sessions) {
      const item = document.createElement('li');
      const link = document.createElement('a');
      link.href = `#/session/${encodeURIComponent(summary.id)}`;
      link.textContent = summary.id;
      item.appendChild(link);
      item.append(
        ` · ${summary.mode} · ${summary.pending} pending · ${summary.matrix_ref}`,
      );
      list.appendChild(item);
    }
    if (sessions.sessions.length === 0) {
      const item = document.createElement('li');
      item.className = 'empty';
      item.textContent = 'no sessions yet';
      list.appendChild(item);
    }
    const groupPicker = root.querySelector<HTMLSelectElement>('select[name="group"]');
    const concernGroupPicker = root.querySelector<HTMLSelectElement>(
      'select[name="concern-group"]',
    );
    for (const group of matrix.groups) {
      for (const picker of [groupPicker, concernGroupPicker]) {
        if (picker !== null) {
          const option = document.createElement('option');
          option.value = group.id;
          option.textContent = group.display_name;
          picker.appendChild(option);
        }
      }
    }
  } catch (error) {
    status.textContent =
      error instanceof ApiRequestError
        ? `${error.code}: ${error.message}`
        : String(error);
  }
}

function sessionForm(status: HTMLElement): HTMLFormElement {
  const form = document.createElement('form');
  form.className = 'session-form';

  const heading = document.createElement('h2');
  heading.textContent = 'Start a session';
  form.appendChild(heading);

  const group = document.createElement('select');
  group.name = 'group';
  form.appendChild(group);

  const mode = document.createElement('select');
  mode.name = 'mode';
  for (const value of ['full', 'triage'] as const) {
    const option = document.createElement('option');
    option.value = value;
    option.textContent = value;
    mode.appendChild(option);
  }
  form.appendChild(mode);

  const submit = document.createElement('button');
  submit.type = 'submit';
  submit.textContent = 'Start';
  form.appendChild(submit);

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    api
      .createSession({ group: group.value, mode: mode.value as ModeName })
      .then((created) => {
        window.location.hash = `#/session/${encodeURIComponent(created.id)}`;
      })
      .catch((error: unknown) => {
        status.textContent =
          error instanceof ApiRequestError
            ? `${error.code}: ${error.message}`
            : String(error);
      });
  });
  return form;
}

function concernForm(status: HTMLElement): HTMLFormElement {
  const form = document.createElement('form');
  form.className = 'concern-form';

  const heading = document.createElement('h2');
  heading.textContent = 'Add a concern';
  form.appendChild(heading);

  const id = document.createElement('input');
  id.name = 'id';
  id.placeholder = 'concern id';
  form.appendChild(id);

  const text = document.createElement('input');
  text.name = 'text';
  text.placeholder = 'topic text';
  form.appendChild(text);

  const interrogative = document.createElement('select');
  interrogative.name = 'interrogative';
  for (const value of COLUMN_ORDER) {
    const option = document.createElement('option');
    option.value = value;
    option.textContent = value;
    interrogative.appendChild(option);
  }
  form.appendChild(interrogative);

  const group = document.createElement('select');
  group.name = 'concern-group';
  form.appendChild(group);

  const submit = document.createElement('button');
  submit.type = 'submit';
  submit.textContent = 'Add';
  form.appendChild(submit);

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    api
      .addConcern({
        id: id.value,
        text: text.value,
        interrogative: interrogative.value as InterrogativeName,
        groups: [group.value],
      })
      .then((added) => {
        status.textContent = `added concern ${added.added.id}`;
        id.value = '';
        text.value = '';
      })
      .catch((error: unknown) => {
        status.textContent =
          error instanceof ApiRequestError
            ? `${error.code}: ${error.message}`
            : String(error);
      });
  });
  return form;
}

window.addEventListener('hashchange', route);
route();
