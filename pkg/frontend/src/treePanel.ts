/** Stateful panel around one tree: fetches the document with the current
 * toggles, renders the full or collapsed view, and handles node expansion
 * with at most one in-flight mutation per tree. */

import { ApiClient, ApiError } from './api';
import { renderCollapsedView, renderTreeView } from './treeView';
import { defaultToggles, TreeResponse, TreeToggles } from './types';

/** Past this many nodes the panel suggests enabling collapse. */
export const COLLAPSE_PROMPT_THRESHOLD = 500;

export interface ExpandParams {
  k: number;
  n: number;
}

export class TreePanel {
  toggles: TreeToggles = defaultToggles();
  response: TreeResponse | null = null;
  selectedNodeId: number | null = null;

  private viewEl: HTMLElement;
  private noticeEl: HTMLElement;
  private mutationInFlight = false;
  private loadGeneration = 0;

  constructor(
    public root: HTMLElement,
    private api: ApiClient,
    public treeId: string,
    private expandParams: ExpandParams = { k: 2, n: 2 },
  ) {
    root.classList.add('tree-panel');
    this.noticeEl = document.createElement('div');
    this.noticeEl.className = 'notice';
    this.viewEl = document.createElement('div');
    this.viewEl.className = 'view';
    root.append(this.noticeEl, this.viewEl);
  }

  /** Re-fetch with current toggles; stale responses are dropped
   * (cancel-and-replace semantics for reads). */
  async load(): Promise<void> {
    const generation = ++this.loadGeneration;
    let response: TreeResponse;
    try {
      response = await this.api.getTree(this.treeId, this.toggles);
    } catch (error) {
      if (generation === this.loadGeneration) this.showError(error);
      return;
    }
    if (generation !== this.loadGeneration) return;
    this.response = response;
    this.render();
  }

  async setToggles(update: Partial<TreeToggles>): Promise<void> {
    this.toggles = { ...this.toggles, ...update };
    await this.load();
  }

  render(): void {
    if (!this.response) return;
    if (this.toggles.collapseWordlist && this.response.collapsed) {
      renderCollapsedView(this.viewEl, this.response.collapsed, {
        selectedNodeId: this.selectedNodeId,
      });
    } else {
      renderTreeView(this.viewEl, this.response, {
        selectedNodeId: this.selectedNodeId,
        onNodeClick: (nodeId) => void this.expandNode(nodeId),
      });
    }
    const nodeCount = this.response.tree.nodes.length;
    if (!this.toggles.collapseWordlist && nodeCount > COLLAPSE_PROMPT_THRESHOLD) {
      this.showNotice(
        `${nodeCount} nodes — enable wordlist collapse for an overview`,
        'collapse-prompt',
      );
    } else {
      this.clearNotice();
    }
  }

  /** Selecting a node asks the service to continue beam search from it. */
  async expandNode(nodeId: number): Promise<void> {
    if (this.mutationInFlight) return;
    this.selectedNodeId = nodeId;
    this.mutationInFlight = true;
    try {
      const response = await this.api.expandNode(
        this.treeId, nodeId, this.expandParams.k, this.expandParams.n,
      );
      this.response = { ...this.response, ...response };
      this.render();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.showNotice('Tree is busy — try expanding again in a moment', 'retry');
      } else {
        this.showError(error);
      }
    } finally {
      this.mutationInFlight = false;
    }
  }

  private showNotice(message: string, kind: string): void {
    this.noticeEl.textContent = message;
    this.noticeEl.className = `notice ${kind}`;
  }

  private clearNotice(): void {
    this.noticeEl.textContent = '';
    this.noticeEl.className = 'notice';
  }

  /** Schema or transport problems land in an error panel, never a crash. */
  private showError(error: unknown): void {
    const message = error instanceof Error ? error.message : String(error);
    this.showNotice(message, 'error');
  }
}
