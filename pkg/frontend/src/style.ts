/**
 * Pinned plot style. Bump STYLE_VERSION on any visual change so golden
 * images stay comparable across runs.
 */

export const STYLE_VERSION = "1";

export const FONT_FAMILY = "DejaVu Sans, Helvetica, Arial, sans-serif";
export const FONT_SIZE = 12;
export const TITLE_SIZE = 14;

/** Curve color cycle: blue, red, green first (the large-N figures use
 * exactly those three), then fallbacks. */
export const LINE_COLORS = [
  "#1f4fd8",
  "#d62728",
  "#2ca02c",
  "#111111",
  "#9467bd",
  "#ff7f0e",
];

export const AXIS_COLOR = "#222222";
export const GRID_COLOR = "#dddddd";
export const BACKGROUND = "#ffffff";

/** Viridis control points (t in [0,1] -> rgb). */
const VIRIDIS: Array<[number, number, number]> = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

export function viridis(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const scaled = clamped * (VIRIDIS.length - 1);
  const lo = Math.floor(scaled);
  const hi = Math.min(lo + 1, VIRIDIS.length - 1);
  const frac = scaled - lo;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
  const [r, g, b] = [0, 1, 2].map((i) => mix(VIRIDIS[lo][i], VIRIDIS[hi][i]));
  return `rgb(${r},${g},${b})`;
}
