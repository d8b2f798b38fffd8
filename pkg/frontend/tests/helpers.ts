/** Fixture loading and a route-table fetch stub for the API client. */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import type { FetchLike } from '../src/api';

const fixturesDir = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(fixturesDir, name), 'utf-8')) as T;
}

export interface Route {
  /** Exact path with query, e.g. "/api/trees/t000001?ranks=true". */
  url: string;
  method?: string;
  status?: number;
  body: unknown;
}

/** Fetch stub resolving from a route table; records every request. */
export function makeFetch(routes: Route[]): FetchLike & { calls: string[] } {
  const calls: string[] = [];
  const impl = async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? 'GET';
    calls.push(`${method} ${url}`);
    const route = routes.find(
      (r) => r.url === url && (r.method ?? 'GET') === method,
    );
    if (!route) {
      return new Response(JSON.stringify({ detail: `no route for ${url}` }), {
        status: 404,
        headers: { 'Content-Type': 'application/json' },
      });
    }
    return new Response(JSON.stringify(route.body), {
      status: route.status ?? 200,
      headers: { 'Content-Type': 'application/json' },
    });
  };
  return Object.assign(impl, { calls });
}
