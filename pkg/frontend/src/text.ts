// Code-point aware text helpers. Report span offsets count Unicode code
// points, while JS string indices count UTF-16 units, so slicing goes
// through an Array.from view.

export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function codePointSlice(text: string, start: number, end: number): string {
  return Array.from(text).slice(start, end).join('');
}

export function codePointLength(text: string): number {
  return Array.from(text).length;
}
