// User actions: each one calls the service, stores the authoritative
// response in the session, and returns the re-rendered pane. Replaying an
// action yields the same state and markup (service mutations are
// idempotent), so retries are safe.

import type { ApiClient } from './api.js';
import { renderReportPane, type ReportView } from './render/report.js';
import { renderSettings } from './render/settings.js';
import { setLists, setLogin, setResult, type SessionState } from './session.js';
import type { ListKind, Scheme } from './types.js';

function requireAuth(state: SessionState): { token: string; appId: string } {
  if (state.token === null || state.appId === null) {
    throw new Error('not logged in or no active app');
  }
  return { token: state.token, appId: state.appId };
}

export async function login(
  api: ApiClient,
  state: SessionState,
  username: string,
  password: string,
  appId: string,
): Promise<void> {
  const { token } = await api.login(username, password);
  setLogin(state, username, token);
  state.appId = appId;
  setLists(state, await api.getLists(token, appId));
}

export async function addTerm(
  api: ApiClient,
  state: SessionState,
  kind: ListKind,
  term: string,
): Promise<string> {
  const { token, appId } = requireAuth(state);
  setLists(state, await api.addTerm(token, appId, kind, term));
  return renderSettings(state.lists);
}

export async function removeTerm(
  api: ApiClient,
  state: SessionState,
  kind: ListKind,
  term: string,
): Promise<string> {
  const { token, appId } = requireAuth(state);
  setLists(state, await api.removeTerm(token, appId, kind, term));
  return renderSettings(state.lists);
}

export async function refreshSettings(api: ApiClient, state: SessionState): Promise<string> {
  const { token, appId } = requireAuth(state);
  setLists(state, await api.getLists(token, appId));
  return renderSettings(state.lists);
}

export async function submitAndDisplay(
  api: ApiClient,
  state: SessionState,
  apiKey: string,
  senderId: string,
  text: string,
  scheme?: Scheme,
): Promise<ReportView> {
  const result = await api.filter(apiKey, senderId, text, scheme);
  setResult(state, text, result);
  const { token, appId } = requireAuth(state);
  state.history = (await api.getReports(token, appId)).reports;
  return renderReportPane(text, result, state.history, scheme?.placeholder ?? '[FILTERED]');
}
