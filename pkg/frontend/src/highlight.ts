/** Shared-token highlighting. The service computes which content tokens the
 * passage and summary share; the client only marks where those tokens occur.
 */

export interface Segment {
  text: string;
  shared: boolean;
}

export function segments(text: string, sharedTokens: readonly string[]): Segment[] {
  const shared = new Set(sharedTokens.map((t) => t.toLowerCase()));
  const out: Segment[] = [];
  for (const token of text.split(/\s+/)) {
    if (!token) continue;
    out.push({ text: token, shared: shared.has(token.toLowerCase()) });
  }
  return out;
}

export function sharedCount(text: string, sharedTokens: readonly string[]): number {
  return segments(text, sharedTokens).filter((s) => s.shared).length;
}
