// Coverage heatmap: one row per stakeholder group, one column per
// interrogative in canonical order. Cell intensity tracks answered/total and
// cells containing gated-out questions carry a distinct mark.

import { COLUMN_ORDER, type HeatmapCellModel } from './viewmodel.js';

export function renderHeatmap(
  root: HTMLElement,
  cells: readonly HeatmapCellModel[],
): void {
  root.innerHTML = '';
  const byKey = new Map(
    cells.map((cell) => [`${cell.group}|${cell.interrogative}`, cell]),
  );
  const groups: string[] = [];
  for (const cell of cells) {
    if (!groups.includes(cell.group)) {
      groups.push(cell.group);
    }
  }

  const table = document.createElement('table');
  table.className = 'heatmap';

  const head = table.createTHead().insertRow();
  head.appendChild(document.createElement('th'));
  for (const interrogative of COLUMN_ORDER) {
    const th = document.createElement('th');
    th.textContent = interrogative;
    head.appendChild(th);
  }

  const body = table.createTBody();
  for (const group of groups) {
    const row = body.insertRow();
    const label = document.createElement('th');
    label.textContent = group;
    label.scope = 'row';
    row.appendChild(label);
    for (const interrogative of COLUMN_ORDER) {
      const cell = byKey.get(`${group}|${interrogative}`);
      row.appendChild(renderCell(cell, group, interrogative));
    }
  }

  root.appendChild(table);
}

function renderCell(
  cell: HeatmapCellModel | undefined,
  group: string,
  interrogative: string,
): HTMLTableCellElement {
  const td = document.createElement('td');
  td.className = 'heatmap-cell';
  td.dataset.group = group;
  td.dataset.interrogative = interrogative;
  if (cell === undefined) {
    td.classList.add('absent');
    td.dataset.total = '0';
    return td;
  }
  td.dataset.total = String(cell.total);
  td.dataset.answered = String(cell.answered);
  td.dataset.skipped = String(cell.skipped);
  td.dataset.gatedOut = String(cell.gatedOut);
  td.dataset.pending = String(cell.pending);
  td.style.setProperty('--intensity', cell.intensity.toFixed(4));
  td.title = `${group}/${interrogative}: ${cell.answered}/${cell.total} answered`;

  const count = document.createElement('span');
  count.className = 'heatmap-count';
  count.textContent = `${cell.answered}/${cell.total}`;
  td.appendChild(count);

  if (cell.gated) {
    td.classList.add('gated');
    const mark = document.createElement('span');
    mark.className = 'gate-mark';
    mark.textContent = '⊘';
    mark.title = `${cell.gatedOut} gated out`;
    td.appendChild(mark);
  }
  return td;
}
