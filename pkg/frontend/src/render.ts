/**
 * Figure rendering: profile lines, I/H_S heatmaps over (t, fN), TMI series.
 *
 * `render` is a pure function of its input CSVs and the pinned style: the
 * same files produce byte-identical SVG and PNG. Output goes to
 * `<output>.svg` and `<output>.png` (an extension on the output path is
 * stripped first).
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { basename, dirname, join } from "node:path";
import { Resvg } from "@resvg/resvg-js";

import { ProfileRow, SchemaError, TmiRow, readProfileCsv, readTmiCsv } from "./schema.js";
import {
  AXIS_COLOR,
  BACKGROUND,
  GRID_COLOR,
  LINE_COLORS,
  STYLE_VERSION,
  TITLE_SIZE,
  viridis,
} from "./style.js";
import {
  Scale,
  linearScale,
  niceTicks,
  polyline,
  round,
  svgDocument,
  textEl,
  xAxis,
  yAxis,
} from "./svg.js";

export type FigureKind = "heatmap" | "profile-lines" | "tmi-series";

export interface FigureSpec {
  kind: FigureKind;
  /** Input CSV paths; profile figures take profile CSVs, tmi-series takes TMI CSVs. */
  inputs: string[];
  /** Output image path; .svg and .png siblings are written. */
  output: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  /** profile-lines only: draw just these collision durations. */
  tSelection?: number[];
}

export interface RenderResult {
  svgPath: string;
  pngPath: string;
  svg: string;
}

const WIDTH = 560;
const HEIGHT = 400;
const MARGIN = { left: 64, right: 24, top: 36, bottom: 48 };
const HEATMAP_RIGHT = 86; // extra room for the color bar

interface Curve {
  label: string;
  points: Array<[number, number]>;
}

function groupProfiles(path: string, rows: ProfileRow[]): Map<number, ProfileRow[]> {
  const groups = new Map<number, ProfileRow[]>();
  for (const row of rows) {
    const bucket = groups.get(row.t);
    if (bucket) {
      bucket.push(row);
    } else {
      groups.set(row.t, [row]);
    }
  }
  for (const bucket of groups.values()) {
    bucket.sort((a, b) => a.fN - b.fN);
  }
  if (groups.size === 0) {
    throw new SchemaError("no data rows", path);
  }
  return groups;
}

function profileCurves(spec: FigureSpec): Curve[] {
  const perFile = spec.inputs.map((path) => ({
    path,
    groups: groupProfiles(path, readProfileCsv(path)),
  }));
  const selected: Array<{ path: string; t: number; rows: ProfileRow[] }> = [];
  for (const { path, groups } of perFile) {
    for (const [t, rows] of groups) {
      if (
        spec.tSelection === undefined ||
        spec.tSelection.some((wanted) => Math.abs(wanted - t) < 1e-9)
      ) {
        selected.push({ path, t, rows });
      }
    }
  }
  if (selected.length === 0) {
    throw new SchemaError(
      `t selection [${(spec.tSelection ?? []).join(", ")}] matches no data`,
      spec.inputs.join(", "),
    );
  }
  const sizes = new Set(selected.map((s) => Math.max(...s.rows.map((r) => r.fN))));
  return selected.map(({ path, t, rows }) => ({
    label: sizes.size > 1 ? `N=${Math.max(...rows.map((r) => r.fN))}` : `t=${t}`,
    points: rows.map((r) => [r.fN, r.iOverHs] as [number, number]),
  }));
}

function legend(curves: Curve[], x: number, y: number): string {
  return curves
    .map((curve, i) => {
      const cy = y + i * 18;
      const color = LINE_COLORS[i % LINE_COLORS.length];
      return (
        `<line x1="${round(x)}" y1="${round(cy)}" x2="${round(x + 22)}" y2="${round(cy)}" ` +
        `stroke="${color}" stroke-width="2"/>` +
        textEl(x + 28, cy + 4, curve.label)
      );
    })
    .join("");
}

function frame(title: string | undefined): string {
  const parts = [
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="${BACKGROUND}"/>`,
    `<desc>style ${STYLE_VERSION}</desc>`,
  ];
  if (title) {
    parts.push(
      textEl(WIDTH / 2, MARGIN.top - 14, title, {
        "text-anchor": "middle",
        "font-size": TITLE_SIZE,
      }),
    );
  }
  return parts.join("");
}

function renderProfileLines(spec: FigureSpec): string {
  const curves = profileCurves(spec);
  const maxSize = Math.max(...curves.flatMap((c) => c.points.map(([x]) => x)));
  const x = linearScale([0, maxSize], [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale([0, 2], [HEIGHT - MARGIN.bottom, MARGIN.top]);
  const parts = [frame(spec.title)];
  for (const level of [0.5, 1.0, 1.5, 2.0]) {
    parts.push(
      `<line x1="${round(x.range[0])}" y1="${round(y(level))}" x2="${round(x.range[1])}" ` +
        `y2="${round(y(level))}" stroke="${GRID_COLOR}"/>`,
    );
  }
  const sizeTicks = Array.from({ length: maxSize + 1 }, (_, k) => k);
  parts.push(
    xAxis(x, HEIGHT - MARGIN.bottom, spec.xLabel ?? "fN", sizeTicks),
    yAxis(y, MARGIN.left, spec.yLabel ?? "I / H_S", [0, 0.5, 1, 1.5, 2]),
  );
  curves.forEach((curve, i) => {
    const color = LINE_COLORS[i % LINE_COLORS.length];
    const pixels = curve.points.map(([px, py]) => [x(px), y(py)] as [number, number]);
    parts.push(polyline(pixels, color));
    for (const [cx, cy] of pixels) {
      parts.push(`<circle cx="${round(cx)}" cy="${round(cy)}" r="2.4" fill="${color}"/>`);
    }
  });
  parts.push(legend(curves, MARGIN.left + 12, MARGIN.top + 12));
  return svgDocument(WIDTH, HEIGHT, parts.join(""));
}

function renderHeatmap(spec: FigureSpec): string {
  if (spec.inputs.length !== 1) {
    throw new SchemaError("heatmap takes exactly one profile CSV", spec.inputs.join(", "));
  }
  const path = spec.inputs[0];
  const groups = groupProfiles(path, readProfileCsv(path));
  const times = Array.from(groups.keys()).sort((a, b) => a - b);
  if (times.length < 2) {
    throw new SchemaError("heatmap needs at least two grid times", path);
  }
  const sizes = Array.from(new Set(Array.from(groups.values()).flat().map((r) => r.fN))).sort(
    (a, b) => a - b,
  );
  const dt = (times[times.length - 1] - times[0]) / (times.length - 1);
  const right = WIDTH - HEATMAP_RIGHT;
  const x = linearScale(
    [times[0] - dt / 2, times[times.length - 1] + dt / 2],
    [MARGIN.left, right],
  );
  const y = linearScale(
    [-0.5, sizes[sizes.length - 1] + 0.5],
    [HEIGHT - MARGIN.bottom, MARGIN.top],
  );
  const color = (value: number) => viridis(value / 2);

  const parts = [frame(spec.title)];
  for (const t of times) {
    for (const row of groups.get(t)!) {
      const value = Number.isNaN(row.iOverHs) ? 0 : row.iOverHs;
      const x0 = x(t - dt / 2);
      const y0 = y(row.fN + 0.5);
      parts.push(
        `<rect x="${round(x0)}" y="${round(y0)}" width="${round(x(t + dt / 2) - x0)}" ` +
          `height="${round(y(row.fN - 0.5) - y0)}" fill="${color(value)}"/>`,
      );
    }
  }
  parts.push(
    xAxis(x, HEIGHT - MARGIN.bottom, spec.xLabel ?? "t"),
    yAxis(y, MARGIN.left, spec.yLabel ?? "fN", sizes),
  );

  // color bar
  const barX = right + 18;
  const barTop = MARGIN.top;
  const barHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const steps = 64;
  for (let i = 0; i < steps; i++) {
    const v0 = (i / steps) * 2;
    const yPix = barTop + barHeight - ((i + 1) / steps) * barHeight;
    parts.push(
      `<rect x="${barX}" y="${round(yPix)}" width="14" height="${round(barHeight / steps + 0.5)}" ` +
        `fill="${color(v0)}"/>`,
    );
  }
  parts.push(
    `<rect x="${barX}" y="${barTop}" width="14" height="${barHeight}" fill="none" stroke="${AXIS_COLOR}"/>`,
  );
  for (const tick of [0, 0.5, 1, 1.5, 2]) {
    const yPix = barTop + barHeight - (tick / 2) * barHeight;
    parts.push(textEl(barX + 20, yPix + 4, String(tick)));
  }
  parts.push(textEl(barX + 7, barTop - 8, "I/H_S", { "text-anchor": "middle" }));
  return svgDocument(WIDTH, HEIGHT, parts.join(""));
}

function renderTmiSeries(spec: FigureSpec): string {
  const series: Array<{ label: string; rows: TmiRow[] }> = spec.inputs.map((path) => {
    const rows = readTmiCsv(path);
    if (rows.length === 0) {
      throw new SchemaError("no data rows", path);
    }
    rows.sort((a, b) => a.t - b.t);
    return { label: basename(path).replace(/\.csv$/, ""), rows };
  });
  const allT = series.flatMap((s) => s.rows.map((r) => r.t));
  const allV = series.flatMap((s) => s.rows.map((r) => r.i3AvgBits));
  const vLo = Math.min(0, ...allV);
  const vHi = Math.max(0, ...allV);
  const pad = (vHi - vLo || 1) * 0.08;
  const x = linearScale([Math.min(...allT), Math.max(...allT)], [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale([vLo - pad, vHi + pad], [HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts = [frame(spec.title)];
  parts.push(
    `<line x1="${round(x.range[0])}" y1="${round(y(0))}" x2="${round(x.range[1])}" ` +
      `y2="${round(y(0))}" stroke="${GRID_COLOR}" stroke-dasharray="4 3"/>`,
  );
  parts.push(
    xAxis(x, HEIGHT - MARGIN.bottom, spec.xLabel ?? "t"),
    yAxis(y, MARGIN.left, spec.yLabel ?? "I3 (bits)", niceTicks(y.domain, 6)),
  );
  series.forEach((s, i) => {
    const color = LINE_COLORS[i % LINE_COLORS.length];
    parts.push(polyline(s.rows.map((r) => [x(r.t), y(r.i3AvgBits)]), color));
  });
  if (series.length > 1) {
    parts.push(
      legend(
        series.map((s) => ({ label: s.label, points: [] })),
        MARGIN.left + 12,
        MARGIN.top + 12,
      ),
    );
  }
  return svgDocument(WIDTH, HEIGHT, parts.join(""));
}

export function renderSvg(spec: FigureSpec): string {
  if (spec.inputs.length === 0) {
    throw new SchemaError("figure spec lists no input CSVs", "(spec)");
  }
  switch (spec.kind) {
    case "profile-lines":
      return renderProfileLines(spec);
    case "heatmap":
      return renderHeatmap(spec);
    case "tmi-series":
      return renderTmiSeries(spec);
    default:
      throw new SchemaError(`unknown figure kind "${(spec as FigureSpec).kind}"`, "(spec)");
  }
}

export function render(spec: FigureSpec): RenderResult {
  const svg = renderSvg(spec);
  const base = spec.output.replace(/\.(svg|png)$/i, "");
  const dir = dirname(base);
  mkdirSync(dir, { recursive: true });
  const svgPath = join(dir, `${basename(base)}.svg`);
  const pngPath = join(dir, `${basename(base)}.png`);
  writeFileSync(svgPath, svg);
  const png = new Resvg(svg, { fitTo: { mode: "width", value: WIDTH * 2 } }).render().asPng();
  writeFileSync(pngPath, png);
  return { svgPath, pngPath, svg };
}
