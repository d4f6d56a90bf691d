/** Weight-slider arithmetic: rendered weights always sum to 1. */

/**
 * Set weights[index] to value and rescale the remaining weights
 * proportionally so the vector stays on the probability simplex.
 * When the others are all zero the remainder is spread evenly.
 */
export function renormalizeWeights(weights: number[], index: number, value: number): number[] {
  if (index < 0 || index >= weights.length) {
    throw new Error(`weight index ${index} out of range`);
  }
  const pinned = Math.min(1, Math.max(0, value));
  if (weights.length === 1) return [1];
  const othersTotal = weights.reduce((acc, w, k) => (k === index ? acc : acc + w), 0);
  const remainder = 1 - pinned;
  return weights.map((w, k) => {
    if (k === index) return pinned;
    if (othersTotal <= 0) return remainder / (weights.length - 1);
    return (w / othersTotal) * remainder;
  });
}

export function weightSum(weights: number[]): number {
  return weights.reduce((acc, w) => acc + w, 0);
}

export function formatWeight(w: number): string {
  return w.toFixed(3);
}

/** Badge text for the simplex constraint, e.g. "Σ = 1.000". */
export function formatSumBadge(weights: number[]): string {
  return `Σ = ${weightSum(weights).toFixed(3)}`;
}
