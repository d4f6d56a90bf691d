/** SVG trajectory chart: one line per alternative, vertical markers at
 *  rank-crossing times, dashed overlay series for what-if previews. */

export interface SeriesPoint {
  step: number;
  score: number;
}

export interface ChartSeries {
  id: string;
  points: SeriesPoint[];
  color: string;
  /** dashed preview series (what-if overlay) */
  dashed?: boolean;
}

export interface ChartMarker {
  time: number;
  label: string;
}

const SVG_NS = "http://www.w3.org/2000/svg";
const MARGIN = { left: 46, right: 12, top: 12, bottom: 26 };

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function buildChart(
  series: ChartSeries[],
  markers: ChartMarker[],
  width = 680,
  height = 320,
): SVGSVGElement {
  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "img",
  });
  svg.classList.add("trajectory-chart");

  const points = series.flatMap((s) => s.points);
  if (points.length === 0) {
    const empty = el("text", { x: String(width / 2), y: String(height / 2), "text-anchor": "middle" });
    empty.textContent = "no trajectory yet";
    svg.appendChild(empty);
    return svg;
  }

  const steps = points.map((p) => p.step);
  const scores = points.map((p) => p.score);
  const x0 = Math.min(...steps);
  const x1 = Math.max(...steps, x0 + 1);
  let y0 = Math.min(...scores);
  let y1 = Math.max(...scores);
  if (y1 - y0 < 1e-9) {
    y0 -= 1;
    y1 += 1;
  }
  const pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const innerWidth = width - MARGIN.left - MARGIN.right;
  const innerHeight = height - MARGIN.top - MARGIN.bottom;
  const x = (step: number) => MARGIN.left + ((step - x0) / (x1 - x0)) * innerWidth;
  const y = (score: number) => MARGIN.top + ((y1 - score) / (y1 - y0)) * innerHeight;

  // axes
  svg.appendChild(el("line", {
    x1: String(MARGIN.left), y1: String(y(0)),
    x2: String(width - MARGIN.right), y2: String(y(0)),
    class: "axis zero-line",
  }));
  svg.appendChild(el("line", {
    x1: String(MARGIN.left), y1: String(MARGIN.top),
    x2: String(MARGIN.left), y2: String(height - MARGIN.bottom),
    class: "axis",
  }));

  // step ticks (at most ~12 labels)
  const tickStride = Math.max(1, Math.ceil((x1 - x0) / 12));
  for (let step = x0; step <= x1; step += tickStride) {
    const tick = el("line", {
      x1: String(x(step)), y1: String(height - MARGIN.bottom),
      x2: String(x(step)), y2: String(height - MARGIN.bottom + 4),
      class: "tick",
      "data-step": String(step),
    });
    svg.appendChild(tick);
    const label = el("text", {
      x: String(x(step)), y: String(height - 8),
      "text-anchor": "middle", class: "tick-label",
    });
    label.textContent = String(step);
    svg.appendChild(label);
  }

  for (const s of series) {
    if (s.points.length === 0) continue;
    const path = s.points
      .map((p) => `${x(p.step).toFixed(2)},${y(p.score).toFixed(2)}`)
      .join(" ");
    const line = el("polyline", {
      points: path,
      fill: "none",
      stroke: s.color,
      "stroke-width": s.dashed ? "1.5" : "2",
      class: s.dashed ? "series overlay" : "series live",
      "data-series": s.id,
    });
    if (s.dashed) line.setAttribute("stroke-dasharray", "6 4");
    svg.appendChild(line);
  }

  for (const marker of markers) {
    const line = el("line", {
      x1: x(marker.time).toFixed(2), y1: String(MARGIN.top),
      x2: x(marker.time).toFixed(2), y2: String(height - MARGIN.bottom),
      class: "event-marker",
      "data-marker": marker.label,
      "data-time": String(marker.time),
    });
    svg.appendChild(line);
    const text = el("text", {
      x: (x(marker.time) + 4).toFixed(2), y: String(MARGIN.top + 12),
      class: "event-label",
    });
    text.textContent = marker.label;
    svg.appendChild(text);
  }

  return svg;
}

/** Stable per-alternative palette (cycled when alternatives exceed it). */
export const PALETTE = [
  "#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed",
  "#0891b2", "#be185d", "#4d7c0f", "#b45309", "#475569",
];

export function seriesColor(index: number): string {
  return PALETTE[index % PALETTE.length];
}
