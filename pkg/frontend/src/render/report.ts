// Report pane: the filtered text with every masked span highlighted, the
// per-source count chips, and recent history. All numbers come verbatim
// from the service report; this module never inspects text for matches.

import { codePointSlice, escapeHtml } from '../text.js';
import type { FilterReport, FilterResult, ReportEntry } from '../types.js';

export interface ReportView {
  html: string;
  highlightCount: number;
}

const SOURCE_LABELS: Record<string, string> = {
  orb: 'my other-regarding list',
  numeral: 'numerals',
};

export function sourceLabel(source: string): string {
  if (source in SOURCE_LABELS) {
    return SOURCE_LABELS[source] as string;
  }
  if (source.startsWith('srb:')) {
    return `blacklist of ${source.slice(4)}`;
  }
  if (source.startsWith('category:')) {
    return `category ${source.slice(9)}`;
  }
  return source;
}

// Rebuild the display from the original text plus the report spans: the
// text between spans is shown as-is and each span becomes a highlighted
// placeholder. The concatenation equals the service's filtered_text.
export function renderFilteredText(
  originalText: string,
  report: FilterReport,
  placeholder: string,
): ReportView {
  const parts: string[] = [];
  let cursor = 0;
  let highlights = 0;
  for (const [start, end, source] of report.spans) {
    parts.push(escapeHtml(codePointSlice(originalText, cursor, start)));
    parts.push(
      `<mark class="masked" title="${escapeHtml(sourceLabel(source))}">` +
        `${escapeHtml(placeholder)}</mark>`,
    );
    highlights += 1;
    cursor = end;
  }
  parts.push(escapeHtml(codePointSlice(originalText, cursor, Infinity)));
  return { html: parts.join(''), highlightCount: highlights };
}

export function renderCountChips(report: FilterReport): string {
  const chips = Object.entries(report.by_source)
    .sort(([a], [b]) => (a < b ? -1 : 1))
    .map(
      ([source, count]) =>
        `<span class="chip" data-source="${escapeHtml(source)}">` +
        `${escapeHtml(sourceLabel(source))}: ${count}</span>`,
    );
  return `<div class="chips" data-total="${report.total_masked}">` +
    `<span class="chip chip-total">masked: ${report.total_masked}</span>${chips.join('')}</div>`;
}

export function renderHistory(entries: ReportEntry[]): string {
  if (entries.length === 0) {
    return '<p class="empty">No filtering events yet.</p>';
  }
  const rows = entries
    .slice()
    .sort((a, b) => b.timestamp - a.timestamp)
    .map((entry) => {
      const when = new Date(entry.timestamp * 1000).toISOString();
      if (entry.type === 'notification') {
        return (
          `<li class="notification">${when}: someone else's message had ` +
          `${entry.masked_count} of your protected term(s) masked</li>`
        );
      }
      return `<li class="report">${when}: your message had ${entry.total_masked} span(s) masked</li>`;
    });
  return `<ul class="history">${rows.join('')}</ul>`;
}

export function renderReportPane(
  originalText: string,
  result: FilterResult,
  history: ReportEntry[],
  placeholder = '[FILTERED]',
): ReportView {
  const filtered = renderFilteredText(originalText, result.report, placeholder);
  const html =
    `<section class="report-pane">` +
    `<div class="filtered-text">${filtered.html}</div>` +
    renderCountChips(result.report) +
    renderHistory(history) +
    `</section>`;
  return { html, highlightCount: filtered.highlightCount };
}
