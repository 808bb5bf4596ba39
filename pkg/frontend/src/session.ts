// Per-tab session state. The token lives here and in memory only; render
// functions receive a view of this state that does not include it.

import type { FilterResult, ListsView, ReportEntry } from './types.js';

export interface SessionState {
  token: string | null;
  username: string | null;
  appId: string | null;
  lists: ListsView;
  lastResult: FilterResult | null;
  lastSubmittedText: string;
  history: ReportEntry[];
}

export function emptyState(): SessionState {
  return {
    token: null,
    username: null,
    appId: null,
    lists: { srb: [], orb: [], srw: [], conflicts: [] },
    lastResult: null,
    lastSubmittedText: '',
    history: [],
  };
}

export function loggedIn(state: SessionState): boolean {
  return state.token !== null;
}

export function setLogin(state: SessionState, username: string, token: string): void {
  state.username = username;
  state.token = token;
}

export function clearSession(state: SessionState): void {
  const fresh = emptyState();
  Object.assign(state, fresh);
}

// Every list mutation response carries the authoritative view; cache it
// verbatim (last mutation wins, matching the service's semantics).
export function setLists(state: SessionState, lists: ListsView): void {
  state.lists = lists;
}

export function setResult(state: SessionState, text: string, result: FilterResult): void {
  state.lastSubmittedText = text;
  state.lastResult = result;
}
