// Typed client for the filtering service. The fetch implementation is
// injectable so tests can replay recorded responses.

import type { FilterResult, ListKind, ListsView, ReportEntry, Scheme } from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    public readonly code: string,
    public readonly detail: string,
    public readonly status: number,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function parse<T>(res: Response): Promise<T> {
  const body = await res.json();
  if (!res.ok) {
    throw new ServiceError(body.error ?? 'Unknown', body.detail ?? res.statusText, res.status);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async call<T>(
    method: string,
    path: string,
    body?: unknown,
    headers: Record<string, string> = {},
  ): Promise<T> {
    const init: RequestInit = {
      method,
      headers: { 'Content-Type': 'application/json', ...headers },
    };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchFn(`${this.baseUrl}${path}`, init);
    return parse<T>(res);
  }

  registerUser(username: string, password: string): Promise<{ user_id: string }> {
    return this.call('POST', '/users', { username, password });
  }

  login(username: string, password: string): Promise<{ token: string; expires_at: number }> {
    return this.call('POST', '/sessions', { username, password });
  }

  grant(token: string, appId: string, allowFiltering = true, allowOthersToShareMe = true) {
    return this.call('POST', '/grants', {
      app_id: appId,
      allow_filtering: allowFiltering,
      allow_others_to_share_me: allowOthersToShareMe,
    }, bearer(token));
  }

  getLists(token: string, appId: string): Promise<ListsView> {
    return this.call('GET', `/lists?app_id=${encodeURIComponent(appId)}`, undefined, bearer(token));
  }

  addTerm(token: string, appId: string, kind: ListKind, term: string): Promise<ListsView> {
    return this.call('PUT', `/lists/${kind}/terms`, { app_id: appId, term }, bearer(token));
  }

  removeTerm(token: string, appId: string, kind: ListKind, term: string): Promise<ListsView> {
    return this.call('DELETE', `/lists/${kind}/terms`, { app_id: appId, term }, bearer(token));
  }

  filter(apiKey: string, sender: string, text: string, scheme?: Scheme): Promise<FilterResult> {
    const body: Record<string, unknown> = { sender, text };
    if (scheme) {
      body.scheme = scheme;
    }
    return this.call('POST', '/filter', body, { 'X-Api-Key': apiKey });
  }

  getReports(token: string, appId: string, since = 0): Promise<{ reports: ReportEntry[] }> {
    const query = `app_id=${encodeURIComponent(appId)}&since=${since}`;
    return this.call('GET', `/reports?${query}`, undefined, bearer(token));
  }
}

function bearer(token: string): Record<string, string> {
  return { Authorization: `Bearer ${token}` };
}
