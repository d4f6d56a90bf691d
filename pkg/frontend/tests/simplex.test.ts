import { describe, expect, it } from "vitest";

import { formatSumBadge, renormalizeWeights, weightSum } from "../src/simplex";

describe("renormalizeWeights", () => {
  it("keeps the sum at one when a slider moves", () => {
    const weights = [0.1, 0.4, 0.1, 0.4];
    const moved = renormalizeWeights(weights, 0, 0.6);
    expect(moved[0]).toBeCloseTo(0.6, 12);
    expect(weightSum(moved)).toBeCloseTo(1, 12);
  });

  it("rescales the others proportionally", () => {
    const moved = renormalizeWeights([0.2, 0.4, 0.4], 0, 0.5);
    expect(moved[1]).toBeCloseTo(0.25, 12);
    expect(moved[2]).toBeCloseTo(0.25, 12);
  });

  it("clamps the dragged weight into [0, 1]", () => {
    expect(renormalizeWeights([0.5, 0.5], 0, 1.7)[0]).toBe(1);
    expect(renormalizeWeights([0.5, 0.5], 0, -0.3)[0]).toBe(0);
  });

  it("spreads the remainder evenly when the others were zero", () => {
    const moved = renormalizeWeights([1, 0, 0], 0, 0.4);
    expect(moved).toEqual([0.4, 0.3, 0.3]);
  });

  it("keeps a single weight pinned at one", () => {
    expect(renormalizeWeights([1], 0, 0.2)).toEqual([1]);
  });

  it("survives random drag sequences with the sum intact", () => {
    let weights = [0.25, 0.25, 0.25, 0.25];
    let seed = 1234;
    const next = () => {
      seed = (seed * 1103515245 + 12345) % 2147483648;
      return seed / 2147483648;
    };
    for (let i = 0; i < 200; i += 1) {
      weights = renormalizeWeights(weights, Math.floor(next() * 4), next());
      expect(weightSum(weights)).toBeCloseTo(1, 9);
      expect(Math.min(...weights)).toBeGreaterThanOrEqual(0);
      expect(formatSumBadge(weights)).toBe("Σ = 1.000");
    }
  });
});
