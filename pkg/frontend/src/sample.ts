import type { CriteriaPayload, ModelPayload } from "./types";

/** The bundled five-batch sample shipped with the backend. */
export const SAMPLE_CRITERIA: CriteriaPayload = {
  alternative_ids: ["613", "2573", "292", "162", "3062"],
  criterion_labels: ["C1", "C2", "C3", "C4"],
  values: [
    [0.62093, 0.70547, 0.734, 0.99189],
    [0.8907, 0.85185, 0.666, 0.54054],
    [0.81395, 0.97002, 0.4, 0.33784],
    [0.77442, 0.82363, 0.734, 0.0],
    [0.5814, 0.17637, 0.7, 0.67568],
  ],
};

export const DEFAULT_MODEL: ModelPayload = {
  weights: [0.1, 0.4, 0.1, 0.4],
  thresholds: [
    { q: 0, p: 0.1, v: 0.3 },
    { q: 0, p: 0.1, v: 0.3 },
    { q: 0, p: 0.1, v: 0.3 },
    { q: 0, p: 0.1, v: 0.3 },
  ],
  exponent: 3,
};

export const DEFAULT_ALPHA = 0.5;
export const DEFAULT_HORIZON = 60;

/** Parse a criteria CSV (`id,<label>,...`) into the API payload. */
export function parseCriteriaCsv(text: string): CriteriaPayload {
  const lines = text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  if (lines.length === 0) throw new Error("empty criteria file");
  const header = lines[0].split(",").map((cell) => cell.trim());
  if (header.length < 2) throw new Error("header needs an id column and at least one criterion");
  const labels = header.slice(1);
  const ids: string[] = [];
  const values: number[][] = [];
  for (const [lineIndex, line] of lines.slice(1).entries()) {
    const cells = line.split(",").map((cell) => cell.trim());
    if (cells.length !== labels.length + 1) {
      throw new Error(`row ${lineIndex + 2}: expected ${labels.length + 1} fields, got ${cells.length}`);
    }
    const id = cells[0];
    if (ids.includes(id)) throw new Error(`row ${lineIndex + 2}: duplicate id ${id}`);
    const row = cells.slice(1).map((cell) => {
      const parsed = Number(cell);
      if (cell === "" || Number.isNaN(parsed)) {
        throw new Error(`row ${lineIndex + 2}: non-numeric value "${cell}"`);
      }
      return parsed;
    });
    ids.push(id);
    values.push(row);
  }
  if (ids.length === 0) throw new Error("no alternatives in criteria file");
  return { alternative_ids: ids, criterion_labels: labels, values };
}
