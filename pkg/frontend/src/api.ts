/** Thin typed client for the beamscope service.
 *
 * The fetch implementation is injectable so tests can serve fixture
 * documents without a network.
 */

import type {
  ComparisonCoveragePayload,
  ComparisonResponse,
  CoverageReportPayload,
  TreeResponse,
  TreeToggles,
} from './types';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`API error ${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = '',
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        detail = (await response.json()).detail ?? detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return response.json() as Promise<T>;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  getTree(treeId: string, toggles?: Partial<TreeToggles>): Promise<TreeResponse> {
    const query = new URLSearchParams();
    if (toggles?.ranks) query.set('ranks', 'true');
    if (toggles?.sentiment) query.set('sentiment', 'true');
    if (toggles?.groups) query.set('groups', 'true');
    if (toggles?.collapseWordlist) {
      query.set('collapse', 'true');
      query.set('wordlist', toggles.collapseWordlist);
    }
    if (toggles?.includeStubs) query.set('include_stubs', 'true');
    const suffix = query.toString() ? `?${query}` : '';
    return this.request<TreeResponse>(`/api/trees/${treeId}${suffix}`);
  }

  expandNode(treeId: string, nodeId: number, k: number, n: number): Promise<TreeResponse> {
    return this.post<TreeResponse>(`/api/trees/${treeId}/expand`, {
      node_id: nodeId, k, n,
    });
  }

  getCoverage(treeId: string, wordlist: string): Promise<CoverageReportPayload> {
    return this.request<CoverageReportPayload>(
      `/api/trees/${treeId}/coverage?wordlist=${encodeURIComponent(wordlist)}`,
    );
  }

  getComparison(comparisonId: string): Promise<ComparisonResponse> {
    return this.request<ComparisonResponse>(`/api/compare/${comparisonId}`);
  }

  getComparisonCoverage(
    comparisonId: string, wordlist: string,
  ): Promise<ComparisonCoveragePayload> {
    return this.request<ComparisonCoveragePayload>(
      `/api/compare/${comparisonId}/coverage?wordlist=${encodeURIComponent(wordlist)}`,
    );
  }

  listWordlists(): Promise<{ wordlists: string[] }> {
    return this.request<{ wordlists: string[] }>('/api/wordlists');
  }

  createTree(body: Record<string, unknown>): Promise<TreeResponse & { tree_id: string }> {
    return this.post('/api/trees', body);
  }
}
