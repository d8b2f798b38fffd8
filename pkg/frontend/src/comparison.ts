/** Side-by-side comparison: one synchronized tree panel per manifest tree,
 * with shared toggle state and an optional coverage overlay. */

import { ApiClient } from './api';
import { renderCoverageTable } from './coverageTable';
import { TreePanel } from './treePanel';
import { ComparisonManifest, TreeToggles } from './types';

export class ComparisonView {
  panels: TreePanel[] = [];

  private panelsEl: HTMLElement;
  private coverageEl: HTMLElement;

  constructor(
    public root: HTMLElement,
    private api: ApiClient,
    public manifest: ComparisonManifest,
  ) {
    root.classList.add('comparison-view');
    this.panelsEl = document.createElement('div');
    this.panelsEl.className = 'panels';
    this.coverageEl = document.createElement('div');
    this.coverageEl.className = 'coverage-overlay';
    root.append(this.panelsEl, this.coverageEl);

    for (let i = 0; i < manifest.tree_ids.length; i++) {
      const holder = document.createElement('section');
      holder.className = 'comparison-panel';
      const caption = document.createElement('h3');
      caption.textContent = manifest.resolved_prompts[i];
      holder.appendChild(caption);
      const body = document.createElement('div');
      holder.appendChild(body);
      this.panelsEl.appendChild(holder);
      this.panels.push(new TreePanel(body, api, manifest.tree_ids[i]));
    }
  }

  async load(): Promise<void> {
    await Promise.all(this.panels.map((panel) => panel.load()));
  }

  /** A toggle change applies to every panel at once. */
  async setToggles(update: Partial<TreeToggles>): Promise<void> {
    await Promise.all(this.panels.map((panel) => panel.setToggles(update)));
  }

  async showCoverage(comparisonId: string, wordlist: string): Promise<void> {
    const payload = await this.api.getComparisonCoverage(comparisonId, wordlist);
    this.coverageEl.replaceChildren();
    payload.reports.forEach((report, i) => {
      const section = document.createElement('div');
      section.className = 'coverage-report';
      const caption = document.createElement('h4');
      caption.textContent = this.manifest.resolved_prompts[i];
      section.appendChild(caption);
      const tableHolder = document.createElement('div');
      section.appendChild(tableHolder);
      renderCoverageTable(tableHolder, report);
      this.coverageEl.appendChild(section);
    });
    const partial = document.createElement('div');
    partial.className = 'partial-keywords';
    const entries = Object.entries(payload.partial_keywords);
    partial.textContent = entries.length
      ? `Partial: ${entries.map(([kw, idxs]) => `${kw} (${idxs.join(', ')})`).join('; ')}`
      : 'All keywords shared across trees';
    this.coverageEl.appendChild(partial);
  }
}
