import { ApiError, AuditApi } from "./api.js";
import { tradeoffChart } from "./chart.js";
import { segments } from "./highlight.js";
import {
  SessionState,
  advance,
  current,
  initialState,
  isComplete,
  moveCursor,
  withLabeled,
  withReport,
} from "./session.js";
import type { AuditItem, Label } from "./types.js";

export const REPORT_LAMBDAS = [0.5, 0.6, 0.7];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderTokens(container: HTMLElement, text: string, shared: string[]): void {
  container.textContent = "";
  for (const seg of segments(text, shared)) {
    if (seg.shared) {
      container.appendChild(el("mark", "shared-token", seg.text));
    } else {
      container.appendChild(document.createTextNode(seg.text));
    }
    container.appendChild(document.createTextNode(" "));
  }
}

export class App {
  private state: SessionState;
  private busy = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: AuditApi,
  ) {
    this.state = initialState([], { labeled: 0, total: 0 }, []);
  }

  async start(): Promise<void> {
    try {
      const [session, rows] = await Promise.all([
        this.api.session(),
        this.api.report(REPORT_LAMBDAS),
      ]);
      this.state = initialState(session.items, session.progress, rows);
      this.render();
    } catch (err) {
      this.renderError(err, () => this.start());
    }
  }

  bindKeyboard(target: Pick<Window, "addEventListener">): void {
    const bindings: Record<string, () => void> = {
      g: () => void this.submitLabel("good"),
      u: () => void this.submitLabel("unsupported"),
      arrowright: () => this.setState(moveCursor(this.state, 1)),
      arrowleft: () => this.setState(moveCursor(this.state, -1)),
      n: () => this.setState(advance(this.state, null)),
    };
    target.addEventListener("keydown", (event: KeyboardEvent) => {
      const action = bindings[event.key.toLowerCase()];
      if (action && !event.metaKey && !event.ctrlKey) {
        event.preventDefault();
        action();
      }
    });
  }

  private setState(next: SessionState): void {
    this.state = next;
    this.render();
  }

  async submitLabel(label: Label): Promise<void> {
    const item = current(this.state);
    if (!item || this.busy) return;
    this.busy = true;
    try {
      const resp = await this.api.label(item.item_id, label);
      let next = withLabeled(this.state, resp.item, resp.progress);
      const [nextPayload, rows] = await Promise.all([
        this.api.next(),
        this.api.report(REPORT_LAMBDAS),
      ]);
      next = withReport(next, rows);
      next = { ...next, progress: nextPayload.progress };
      if (nextPayload.item) next = advance(next, nextPayload.item);
      this.busy = false;
      this.setState(next);
    } catch (err) {
      this.busy = false;
      if (err instanceof ApiError && err.status === 404) {
        this.renderStaleSession();
      } else {
        this.renderError(err, () => this.submitLabel(label));
      }
    }
  }

  // --- rendering ---

  render(): void {
    this.root.textContent = "";
    this.root.appendChild(this.header());
    const main = el("div", "columns");
    if (isComplete(this.state)) {
      main.appendChild(this.completionCard());
    } else {
      main.appendChild(this.pairCard());
    }
    main.appendChild(this.reportPanel());
    this.root.appendChild(main);
  }

  private header(): HTMLElement {
    const { labeled, total } = this.state.progress;
    const header = el("header");
    header.appendChild(el("h1", undefined, "pair audit"));
    const progress = el("div", "progress", `${labeled} / ${total} labeled`);
    progress.dataset.testid = "progress";
    header.appendChild(progress);
    const bar = el("div", "bar");
    const fill = el("div", "bar-fill");
    fill.style.width = total ? `${(100 * labeled) / total}%` : "0%";
    bar.appendChild(fill);
    header.appendChild(bar);
    return header;
  }

  private pairCard(): HTMLElement {
    const item = current(this.state);
    const card = el("section", "pair-card");
    if (!item) {
      card.appendChild(el("p", undefined, "no items in this session"));
      return card;
    }
    card.dataset.itemId = item.item_id;

    const meta = el(
      "div",
      "meta",
      `item ${this.state.cursor + 1} of ${this.state.items.length} | overlap ${item.score.toFixed(3)}`,
    );
    card.appendChild(meta);

    const passage = el("p", "passage");
    passage.dataset.testid = "passage";
    renderTokens(passage, item.passage, item.shared_tokens);
    card.appendChild(el("h2", undefined, "passage"));
    card.appendChild(passage);

    const summary = el("p", "summary");
    summary.dataset.testid = "summary";
    renderTokens(summary, item.summary, item.shared_tokens);
    card.appendChild(el("h2", undefined, "summary sentence"));
    card.appendChild(summary);

    card.appendChild(this.controls(item));
    return card;
  }

  private controls(item: AuditItem): HTMLElement {
    const row = el("div", "controls");
    const mk = (label: Label, caption: string) => {
      const button = el("button", `label-btn ${label}`, caption);
      button.dataset.label = label;
      if (item.label === label) button.classList.add("active");
      button.addEventListener("click", () => void this.submitLabel(label));
      return button;
    };
    row.appendChild(mk("good", "Good (G)"));
    row.appendChild(mk("unsupported", "Unsupported (U)"));
    const status = el(
      "span",
      "label-status",
      item.label === "unlabeled" ? "unlabeled" : `labeled: ${item.label}`,
    );
    status.dataset.testid = "label-status";
    row.appendChild(status);
    return row;
  }

  private completionCard(): HTMLElement {
    const card = el("section", "pair-card complete");
    card.dataset.testid = "completion";
    card.appendChild(el("h2", undefined, "session complete"));
    card.appendChild(
      el("p", undefined, "every sampled pair is labeled; the final report is on the right."),
    );
    return card;
  }

  private reportPanel(): HTMLElement {
    const panel = el("aside", "report");
    panel.appendChild(el("h2", undefined, "quality vs pool size"));

    const table = el("table", "report-table");
    const head = el("tr");
    for (const caption of ["lambda", "good", "unsup.", "good rate", "pool size"]) {
      head.appendChild(el("th", undefined, caption));
    }
    table.appendChild(head);
    for (const row of this.state.rows) {
      const tr = el("tr");
      tr.dataset.lambda = String(row.lambda);
      if (row.lambda === this.state.selectedLambda) tr.classList.add("selected");
      tr.appendChild(el("td", undefined, row.lambda.toFixed(2)));
      tr.appendChild(el("td", undefined, String(row.good_count)));
      tr.appendChild(el("td", undefined, String(row.unsupported_count)));
      tr.appendChild(
        el("td", "rate", row.good_rate === null ? "—" : `${(100 * row.good_rate).toFixed(0)}%`),
      );
      tr.appendChild(el("td", undefined, row.corpus_size.toLocaleString("en-US")));
      tr.addEventListener("click", () => {
        this.setState({ ...this.state, selectedLambda: row.lambda });
      });
      table.appendChild(tr);
    }
    panel.appendChild(table);

    const chart = el("div", "chart-holder");
    chart.innerHTML = tradeoffChart(this.state.rows, this.state.selectedLambda);
    panel.appendChild(chart);
    panel.appendChild(
      el("p", "hint", "G = good, U = unsupported, arrows browse, N jumps to next unlabeled"),
    );
    return panel;
  }

  private renderError(err: unknown, retry: () => void): void {
    this.root.textContent = "";
    const box = el("section", "error-box");
    box.dataset.testid = "error";
    const message = err instanceof Error ? err.message : String(err);
    box.appendChild(el("h2", undefined, "request failed"));
    box.appendChild(el("p", undefined, message));
    const button = el("button", "retry", "Retry");
    button.addEventListener("click", retry);
    box.appendChild(button);
    this.root.appendChild(box);
  }

  private renderStaleSession(): void {
    this.root.textContent = "";
    const box = el("section", "error-box");
    box.dataset.testid = "stale";
    box.appendChild(el("h2", undefined, "session out of date"));
    box.appendChild(el("p", undefined, "this item no longer exists on the server."));
    const button = el("button", "retry", "Reload session");
    button.addEventListener("click", () => void this.start());
    box.appendChild(button);
    this.root.appendChild(box);
  }
}
