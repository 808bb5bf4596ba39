// Browser bootstrap: wires the three panes (Lists, Scheme, Try-It/Report)
// to the service. Everything below is DOM plumbing; rendering and state
// live in their own modules so they stay testable.

import { ApiClient, ServiceError } from './api.js';
import * as controller from './controller.js';
import { emptyState } from './session.js';
import type { Category, ListKind, Scheme } from './types.js';

const api = new ApiClient('');
const state = emptyState();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function showError(err: unknown): void {
  const banner = el<HTMLDivElement>('error-banner');
  if (err instanceof ServiceError) {
    banner.textContent = `${err.code}: ${err.detail}`;
    if (err.code === 'InvalidSession') {
      el<HTMLDivElement>('login-pane').style.display = 'block';
      el<HTMLDivElement>('main-panes').style.display = 'none';
    }
  } else {
    banner.textContent = String(err);
  }
  banner.style.display = 'block';
}

function clearError(): void {
  el<HTMLDivElement>('error-banner').style.display = 'none';
}

function selectedScheme(): Scheme {
  const categories = Array.from(
    document.querySelectorAll<HTMLInputElement>('input[name="category"]:checked'),
  ).map((box) => box.value as Category);
  const numerals = categories.includes('numerals');
  return { categories, numerals };
}

function bindSettingsPane(): void {
  const pane = el<HTMLDivElement>('settings');
  pane.addEventListener('submit', async (event) => {
    const form = event.target as HTMLFormElement;
    if (!form.classList.contains('add-term')) {
      return;
    }
    event.preventDefault();
    clearError();
    const kind = form.dataset.kind as ListKind;
    const input = form.elements.namedItem('term') as HTMLInputElement;
    try {
      pane.innerHTML = await controller.addTerm(api, state, kind, input.value);
    } catch (err) {
      showError(err);
    }
  });
  pane.addEventListener('click', async (event) => {
    const button = event.target as HTMLElement;
    if (!button.classList.contains('remove')) {
      return;
    }
    clearError();
    try {
      pane.innerHTML = await controller.removeTerm(
        api,
        state,
        button.dataset.kind as ListKind,
        button.dataset.term ?? '',
      );
    } catch (err) {
      showError(err);
    }
  });
}

export async function start(): Promise<void> {
  bindSettingsPane();

  el<HTMLFormElement>('login-form').addEventListener('submit', async (event) => {
    event.preventDefault();
    clearError();
    const username = el<HTMLInputElement>('login-username').value;
    const password = el<HTMLInputElement>('login-password').value;
    const appId = el<HTMLInputElement>('login-app').value;
    try {
      await controller.login(api, state, username, password, appId);
      el<HTMLDivElement>('login-pane').style.display = 'none';
      el<HTMLDivElement>('main-panes').style.display = 'block';
      el<HTMLDivElement>('greeting').textContent = `Signed in as ${state.username}`;
      el<HTMLDivElement>('settings').innerHTML = await controller.refreshSettings(api, state);
    } catch (err) {
      showError(err);
    }
  });

  el<HTMLFormElement>('try-form').addEventListener('submit', async (event) => {
    event.preventDefault();
    clearError();
    const apiKey = el<HTMLInputElement>('try-api-key').value;
    const sender = el<HTMLInputElement>('try-sender').value;
    const text = el<HTMLTextAreaElement>('try-text').value;
    try {
      const view = await controller.submitAndDisplay(
        api, state, apiKey, sender, text, selectedScheme(),
      );
      el<HTMLDivElement>('report').innerHTML = view.html;
    } catch (err) {
      showError(err);
    }
  });

  el<HTMLButtonElement>('logout').addEventListener('click', () => {
    window.location.reload();
  });
}

if (typeof document !== 'undefined' && document.readyState !== 'loading') {
  void start();
} else if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', () => void start());
}
