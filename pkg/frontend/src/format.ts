/** Number presentation helpers.
 *
 * Every displayed value is a direct presentation of a number that appears in
 * an API payload; nothing is recomputed from tree structure on the client.
 */

/** Probability (0..1) as a percentage with one decimal, e.g. "42.0%". */
export function formatPercent(probability: number): string {
  return `${(probability * 100).toFixed(1)}%`;
}

/** Conditional probability of a node from its payload logprob. */
export function probabilityFromLogprob(logprob: number): number {
  return Math.exp(logprob);
}

/** Edge stroke width, monotone in probability. */
export function strokeWidth(probability: number): number {
  return 0.5 + 4.0 * probability;
}

const SENTIMENT_COLORS: Record<string, string> = {
  negative: '#c0392b',
  neutral: '#7f8c8d',
  positive: '#27ae60',
};

export function sentimentColor(label: string): string {
  return SENTIMENT_COLORS[label] ?? SENTIMENT_COLORS.neutral;
}

const GROUP_PALETTE = [
  '#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
  '#8c564b', '#e377c2', '#bcbd22', '#17becf',
];

export function groupColor(groupId: number): string {
  return GROUP_PALETTE[groupId % GROUP_PALETTE.length];
}
