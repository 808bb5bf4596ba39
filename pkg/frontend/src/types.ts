// Wire types for the filtering service JSON API.

export type ListKind = 'srb' | 'orb' | 'srw';

export const CATEGORIES = [
  'names',
  'links',
  'countries',
  'diseases',
  'street_names',
  'numerals',
] as const;

export type Category = (typeof CATEGORIES)[number];

export interface Scheme {
  categories?: Category[];
  numerals?: boolean;
  placeholder?: string;
}

export interface FilterReport {
  report_id: number;
  app_id: string;
  timestamp: number;
  total_masked: number;
  by_source: Record<string, number>;
  // [start, end, source] offsets into the original text, in code points
  spans: [number, number, string][];
}

export interface FilterResult {
  filtered_text: string;
  report: FilterReport;
}

export interface ListsView {
  srb: string[];
  orb: string[];
  srw: string[];
  conflicts: string[];
}

export interface ReportEntry {
  type: 'report' | 'notification';
  report_id: number;
  app_id: string;
  timestamp: number;
  total_masked?: number;
  by_source?: Record<string, number>;
  spans?: [number, number, string][];
  masked_count?: number;
}

export interface ApiError {
  error: string;
  detail: string;
}
