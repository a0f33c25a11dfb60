import { describe, expect, it } from "vitest";

import {
  advance,
  current,
  firstUnlabeledIndex,
  initialState,
  isComplete,
  moveCursor,
  withLabeled,
} from "../src/session.js";
import type { AuditItem } from "../src/types.js";

function item(id: string, label: AuditItem["label"] = "unlabeled"): AuditItem {
  return {
    item_id: id,
    passage: "p",
    summary: "s",
    score: 0.7,
    label,
    labeled_at: null,
    shared_tokens: [],
  };
}

describe("session state", () => {
  it("starts on the first unlabeled item", () => {
    const state = initialState([item("a", "good"), item("b"), item("c")], { labeled: 1, total: 3 }, []);
    expect(current(state)?.item_id).toBe("b");
  });

  it("clamps cursor moves at both ends", () => {
    let state = initialState([item("a"), item("b")], { labeled: 0, total: 2 }, []);
    state = moveCursor(state, -5);
    expect(state.cursor).toBe(0);
    state = moveCursor(state, +5);
    expect(state.cursor).toBe(1);
  });

  it("withLabeled swaps in the server item and progress verbatim", () => {
    const state = initialState([item("a"), item("b")], { labeled: 0, total: 2 }, []);
    const updated = { ...item("a", "good"), labeled_at: "t" };
    const next = withLabeled(state, updated, { labeled: 1, total: 2 });
    expect(next.items[0].label).toBe("good");
    expect(next.progress).toEqual({ labeled: 1, total: 2 });
  });

  it("advance follows the server's next item", () => {
    const state = initialState([item("a", "good"), item("b", "good"), item("c")], { labeled: 2, total: 3 }, []);
    expect(current(advance(state, item("c")))?.item_id).toBe("c");
  });

  it("isComplete tracks server progress only", () => {
    const state = initialState([item("a", "good")], { labeled: 1, total: 1 }, []);
    expect(isComplete(state)).toBe(true);
    expect(firstUnlabeledIndex(state.items)).toBe(-1);
  });
});
