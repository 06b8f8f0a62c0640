/**
 * Minimal SVG assembly: linear scales, nice ticks, axis groups. Everything
 * returns plain strings; no DOM, no randomness, so identical inputs give
 * byte-identical documents.
 */

import { AXIS_COLOR, FONT_FAMILY, FONT_SIZE } from "./style.js";

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const fn = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

/** Rounded tick positions covering the domain (roughly `count` of them). */
export function niceTicks([lo, hi]: [number, number], count = 5): number[] {
  if (lo === hi) {
    return [lo];
  }
  const rawStep = (hi - lo) / Math.max(1, count);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[candidates.length - 1];
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : Number(v.toPrecision(12)));
  }
  return ticks;
}

export function formatTick(value: number): string {
  if (Number.isInteger(value)) {
    return String(value);
  }
  return String(Number(value.toPrecision(4)));
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function textEl(
  x: number,
  y: number,
  content: string,
  attrs: Record<string, string | number> = {},
): string {
  const merged: Record<string, string | number> = {
    x: round(x),
    y: round(y),
    "font-family": FONT_FAMILY,
    "font-size": FONT_SIZE,
    fill: AXIS_COLOR,
    ...attrs,
  };
  const serialized = Object.entries(merged)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return `<text ${serialized}>${esc(content)}</text>`;
}

export function round(value: number): number {
  return Number(value.toFixed(2));
}

export function polyline(points: Array<[number, number]>, color: string, width = 1.8): string {
  const path = points.map(([x, y]) => `${round(x)},${round(y)}`).join(" ");
  return `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="${width}"/>`;
}

export function xAxis(scale: Scale, y: number, label: string, ticks?: number[]): string {
  const [r0, r1] = scale.range;
  const parts = [
    `<line x1="${round(r0)}" y1="${round(y)}" x2="${round(r1)}" y2="${round(y)}" stroke="${AXIS_COLOR}"/>`,
  ];
  for (const tick of ticks ?? niceTicks(scale.domain)) {
    const x = scale(tick);
    parts.push(
      `<line x1="${round(x)}" y1="${round(y)}" x2="${round(x)}" y2="${round(y + 4)}" stroke="${AXIS_COLOR}"/>`,
      textEl(x, y + 16, formatTick(tick), { "text-anchor": "middle" }),
    );
  }
  parts.push(
    textEl((r0 + r1) / 2, y + 32, label, { "text-anchor": "middle", "font-style": "italic" }),
  );
  return parts.join("");
}

export function yAxis(scale: Scale, x: number, label: string, ticks?: number[]): string {
  const [r0, r1] = scale.range;
  const parts = [
    `<line x1="${round(x)}" y1="${round(r0)}" x2="${round(x)}" y2="${round(r1)}" stroke="${AXIS_COLOR}"/>`,
  ];
  for (const tick of ticks ?? niceTicks(scale.domain)) {
    const y = scale(tick);
    parts.push(
      `<line x1="${round(x - 4)}" y1="${round(y)}" x2="${round(x)}" y2="${round(y)}" stroke="${AXIS_COLOR}"/>`,
      textEl(x - 7, y + 4, formatTick(tick), { "text-anchor": "end" }),
    );
  }
  const cy = (r0 + r1) / 2;
  parts.push(
    `<g transform="rotate(-90 ${round(x - 38)} ${round(cy)})">` +
      textEl(x - 38, cy, label, { "text-anchor": "middle", "font-style": "italic" }) +
      `</g>`,
  );
  return parts.join("");
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">${body}</svg>`
  );
}
