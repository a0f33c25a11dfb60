import type { ThresholdRow } from "./types.js";

/** Two-axis trade-off chart: good rate (left axis) and pool size (right axis)
 * against the threshold, rendered as a standalone SVG string. Rows with a
 * null good rate contribute no rate point.
 */

const W = 440;
const H = 220;
const PAD = { left: 44, right: 56, top: 16, bottom: 28 };

function xScale(lambdas: number[]): (v: number) => number {
  const lo = Math.min(...lambdas);
  const hi = Math.max(...lambdas);
  const span = hi - lo || 1;
  return (v) => PAD.left + ((v - lo) / span) * (W - PAD.left - PAD.right);
}

function yRate(v: number): number {
  return H - PAD.bottom - v * (H - PAD.top - PAD.bottom);
}

function ySize(v: number, max: number): number {
  const denom = max || 1;
  return H - PAD.bottom - (v / denom) * (H - PAD.top - PAD.bottom);
}

function polyline(points: Array<[number, number]>, cls: string): string {
  if (points.length === 0) return "";
  const attr = points.map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`).join(" ");
  return `<polyline class="${cls}" fill="none" points="${attr}"/>`;
}

export function tradeoffChart(rows: ThresholdRow[], selectedLambda: number): string {
  if (rows.length === 0) {
    return `<svg viewBox="0 0 ${W} ${H}" class="chart" role="img"></svg>`;
  }
  const lambdas = rows.map((r) => r.lambda);
  const x = xScale(lambdas);
  const maxSize = Math.max(...rows.map((r) => r.corpus_size));

  const ratePts: Array<[number, number]> = [];
  const sizePts: Array<[number, number]> = [];
  const marks: string[] = [];
  for (const row of rows) {
    const px = x(row.lambda);
    sizePts.push([px, ySize(row.corpus_size, maxSize)]);
    marks.push(`<circle class="pt-size" cx="${px.toFixed(1)}" cy="${ySize(row.corpus_size, maxSize).toFixed(1)}" r="4"/>`);
    if (row.good_rate !== null) {
      ratePts.push([px, yRate(row.good_rate)]);
      marks.push(`<circle class="pt-rate" cx="${px.toFixed(1)}" cy="${yRate(row.good_rate).toFixed(1)}" r="4"/>`);
    }
    marks.push(
      `<text class="tick" x="${px.toFixed(1)}" y="${H - 8}" text-anchor="middle">${row.lambda.toFixed(2)}</text>`,
    );
  }

  const sel = lambdas.includes(selectedLambda)
    ? `<line class="selected" x1="${x(selectedLambda).toFixed(1)}" y1="${PAD.top}" x2="${x(selectedLambda).toFixed(1)}" y2="${H - PAD.bottom}" stroke-dasharray="4 3"/>`
    : "";

  return [
    `<svg viewBox="0 0 ${W} ${H}" class="chart" role="img" aria-label="good rate and pool size by threshold">`,
    `<line class="axis" x1="${PAD.left}" y1="${H - PAD.bottom}" x2="${W - PAD.right}" y2="${H - PAD.bottom}"/>`,
    `<text class="axis-label left" x="${PAD.left}" y="${PAD.top - 4}">good rate</text>`,
    `<text class="axis-label right" x="${W - PAD.right}" y="${PAD.top - 4}" text-anchor="end">pool size</text>`,
    sel,
    polyline(ratePts, "line-rate"),
    polyline(sizePts, "line-size"),
    ...marks,
    `</svg>`,
  ].join("");
}
