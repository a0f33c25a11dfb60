import type { AuditItem, Progress, ThresholdRow } from "./types.js";

export interface SessionState {
  items: AuditItem[];
  cursor: number;
  progress: Progress;
  rows: ThresholdRow[];
  selectedLambda: number;
}

export function firstUnlabeledIndex(items: readonly AuditItem[]): number {
  return items.findIndex((it) => it.label === "unlabeled");
}

export function initialState(
  items: AuditItem[],
  progress: Progress,
  rows: ThresholdRow[],
  selectedLambda = 0.6,
): SessionState {
  const unlabeled = firstUnlabeledIndex(items);
  return {
    items,
    cursor: unlabeled === -1 ? 0 : unlabeled,
    progress,
    rows,
    selectedLambda,
  };
}

export function current(state: SessionState): AuditItem | null {
  return state.items[state.cursor] ?? null;
}

export function isComplete(state: SessionState): boolean {
  return state.progress.total > 0 && state.progress.labeled >= state.progress.total;
}

/** Fold a label response in: the server's item and progress are authoritative. */
export function withLabeled(
  state: SessionState,
  updated: AuditItem,
  progress: Progress,
): SessionState {
  const items = state.items.map((it) => (it.item_id === updated.item_id ? updated : it));
  return { ...state, items, progress };
}

export function withReport(state: SessionState, rows: ThresholdRow[]): SessionState {
  return { ...state, rows };
}

export function withCursor(state: SessionState, cursor: number): SessionState {
  const clamped = Math.max(0, Math.min(state.items.length - 1, cursor));
  return { ...state, cursor: clamped };
}

export function moveCursor(state: SessionState, delta: number): SessionState {
  return withCursor(state, state.cursor + delta);
}

/** Advance to the item the server says is next; fall back to local scan. */
export function advance(state: SessionState, nextItem: AuditItem | null): SessionState {
  if (nextItem) {
    const idx = state.items.findIndex((it) => it.item_id === nextItem.item_id);
    if (idx !== -1) return withCursor(state, idx);
  }
  const unlabeled = firstUnlabeledIndex(state.items);
  return unlabeled === -1 ? state : withCursor(state, unlabeled);
}
