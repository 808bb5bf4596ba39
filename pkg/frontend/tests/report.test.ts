// Dashboard contract (fixture half): for every recorded submission the
// rendered highlight count equals report.total_masked, and the rebuilt
// display text equals the service's filtered_text byte for byte.

import { readFileSync } from 'node:fs';
import { join, dirname } from 'node:path';
import { fileURLToPath } from 'node:url';
import { describe, expect, it } from 'vitest';

import { renderCountChips, renderFilteredText, renderHistory, renderReportPane } from '../src/render/report.js';
import { codePointSlice } from '../src/text.js';
import type { FilterReport } from '../src/types.js';

const here = dirname(fileURLToPath(import.meta.url));
const fixture = JSON.parse(readFileSync(join(here, 'fixtures', 'filter_fixtures.json'), 'utf8'));

interface Submission {
  sender: string;
  text: string;
  scheme: { placeholder?: string };
  filtered_text: string;
  report: FilterReport;
}

const submissions: Submission[] = fixture.submissions;

function rebuildPlainText(text: string, report: FilterReport, placeholder: string): string {
  let out = '';
  let cursor = 0;
  for (const [start, end] of report.spans) {
    out += codePointSlice(text, cursor, start) + placeholder;
    cursor = end;
  }
  return out + codePointSlice(text, cursor, Infinity);
}

describe('recorded service fixture', () => {
  it('has the ten scripted submissions', () => {
    expect(submissions).toHaveLength(10);
  });

  for (const [index, sub] of submissions.entries()) {
    const placeholder = sub.scheme.placeholder ?? '[FILTERED]';

    it(`submission ${index + 1}: highlight count equals total_masked`, () => {
      const view = renderReportPane(sub.text, { filtered_text: sub.filtered_text, report: sub.report }, [], placeholder);
      expect(view.highlightCount).toBe(sub.report.total_masked);
      const markCount = (view.html.match(/<mark /g) ?? []).length;
      expect(markCount).toBe(sub.report.total_masked);
      expect(view.html).toContain(`data-total="${sub.report.total_masked}"`);
    });

    it(`submission ${index + 1}: display rebuilt from spans equals filtered_text`, () => {
      expect(rebuildPlainText(sub.text, sub.report, placeholder)).toBe(sub.filtered_text);
    });

    it(`submission ${index + 1}: chip counts sum to total`, () => {
      const total = Object.values(sub.report.by_source).reduce((a, b) => a + b, 0);
      expect(total).toBe(sub.report.total_masked);
      expect(sub.report.spans).toHaveLength(sub.report.total_masked);
    });
  }
});

describe('report rendering details', () => {
  const base: FilterReport = {
    report_id: 1,
    app_id: 'a',
    timestamp: 1700000000,
    total_masked: 1,
    by_source: { 'srb:user1': 1 },
    spans: [[4, 9, 'srb:user1']],
  };

  it('escapes html in surrounding text', () => {
    const view = renderFilteredText('<b> secret </b>', { ...base, spans: [[4, 10, 'orb']] }, '[X]');
    expect(view.html).not.toContain('<b>');
    expect(view.html).toContain('&lt;b&gt;');
  });

  it('human-readable source labels', () => {
    const chips = renderCountChips({
      ...base,
      total_masked: 3,
      by_source: { 'srb:u9': 1, 'category:names': 1, numeral: 1 },
    });
    expect(chips).toContain('blacklist of u9');
    expect(chips).toContain('category names');
    expect(chips).toContain('numerals');
  });

  it('renders notification stubs without span detail', () => {
    const html = renderHistory([
      { type: 'notification', report_id: 2, app_id: 'a', timestamp: 1700000001, masked_count: 3 },
    ]);
    expect(html).toContain('3 of your protected term(s)');
  });

  it('empty history message', () => {
    expect(renderHistory([])).toContain('No filtering events yet');
  });
});
