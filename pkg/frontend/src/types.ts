export type Label = "good" | "unsupported";
export type ItemLabel = Label | "unlabeled";

export interface AuditItem {
  item_id: string;
  passage: string;
  summary: string;
  score: number;
  label: ItemLabel;
  labeled_at: string | null;
  shared_tokens: string[];
}

export interface Progress {
  labeled: number;
  total: number;
}

export interface SessionPayload {
  items: AuditItem[];
  progress: Progress;
}

export interface NextPayload {
  item: AuditItem | null;
  progress: Progress;
}

export interface LabelPayload {
  item: AuditItem;
  progress: Progress;
}

export interface ThresholdRow {
  lambda: number;
  good_count: number;
  unsupported_count: number;
  good_rate: number | null;
  corpus_size: number;
}
