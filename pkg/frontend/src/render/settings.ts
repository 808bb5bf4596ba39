// Settings pane: the three term lists with add/remove controls, the six
// category toggles, and a warning badge for terms in both SRB and SRW.

import { escapeHtml } from '../text.js';
import type { ListKind, ListsView } from '../types.js';
import { CATEGORIES } from '../types.js';

const LIST_TITLES: Record<ListKind, string> = {
  srb: 'Protected about me (blocked for everyone)',
  orb: 'I will not share about others',
  srw: 'Shareable about me (always allowed)',
};

function renderTermRow(kind: ListKind, term: string, conflict: boolean): string {
  const badge = conflict
    ? '<span class="badge conflict" title="Also on your whitelist; the whitelist wins">!</span>'
    : '';
  return (
    `<li data-kind="${kind}" data-term="${escapeHtml(term)}">` +
    `<span class="term">${escapeHtml(term)}</span>${badge}` +
    `<button class="remove" data-kind="${kind}" data-term="${escapeHtml(term)}">remove</button>` +
    `</li>`
  );
}

export function renderList(kind: ListKind, lists: ListsView): string {
  const conflicts = new Set(lists.conflicts.map((t) => t.toLowerCase()));
  const items = lists[kind]
    .map((term) =>
      renderTermRow(kind, term, (kind === 'srb' || kind === 'srw') && conflicts.has(term.toLowerCase())),
    )
    .join('');
  return (
    `<div class="term-list" id="list-${kind}">` +
    `<h3>${LIST_TITLES[kind]}</h3>` +
    `<ul>${items}</ul>` +
    `<form class="add-term" data-kind="${kind}">` +
    `<input name="term" placeholder="add a term" />` +
    `<button type="submit">add</button>` +
    `</form>` +
    `</div>`
  );
}

export function renderCategoryToggles(selected: Set<string>): string {
  const boxes = CATEGORIES.map(
    (cat) =>
      `<label><input type="checkbox" name="category" value="${cat}"` +
      `${selected.has(cat) ? ' checked' : ''} /> ${cat.replace('_', ' ')}</label>`,
  );
  return `<fieldset class="categories"><legend>Filter categories</legend>${boxes.join('')}</fieldset>`;
}

export function renderSettings(lists: ListsView, selectedCategories: Set<string> = new Set()): string {
  const conflictNote =
    lists.conflicts.length > 0
      ? `<p class="warning">` +
        `${lists.conflicts.length} term(s) appear on both your blacklist and whitelist: ` +
        `${lists.conflicts.map(escapeHtml).join(', ')}. The whitelist takes priority.</p>`
      : '';
  return (
    `<section class="settings-pane">` +
    conflictNote +
    renderList('srb', lists) +
    renderList('orb', lists) +
    renderList('srw', lists) +
    renderCategoryToggles(selectedCategories) +
    `</section>`
  );
}
