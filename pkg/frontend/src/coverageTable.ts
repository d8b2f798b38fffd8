/** Coverage report table: one row per rank with match count and mean
 * normalized probability, rendered directly from the API payload. */

import { formatPercent } from './format';
import type { CoverageReportPayload } from './types';

export function renderCoverageTable(
  container: HTMLElement,
  report: CoverageReportPayload,
): HTMLTableElement {
  const table = document.createElement('table');
  table.className = 'coverage-table';
  const head = table.createTHead().insertRow();
  for (const column of ['Rank', 'c', 'p']) {
    const cell = document.createElement('th');
    cell.textContent = column;
    head.appendChild(cell);
  }
  const body = table.createTBody();
  for (const row of report.rows) {
    const tr = body.insertRow();
    tr.insertCell().textContent = String(row.rank);
    tr.insertCell().textContent = String(row.c);
    const pCell = tr.insertCell();
    pCell.textContent = row.p === null ? 'N/A' : formatPercent(row.p);
    if (row.p !== null) pCell.title = String(row.p);
  }
  container.replaceChildren(table);
  return table;
}
