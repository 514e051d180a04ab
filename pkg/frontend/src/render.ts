import { EmptyData, PrerenderCheckFailed } from "./errors";
import { Fig1Row, Fig2Row } from "./schema";

export interface StyleOptions {
  width: number;
  height: number;
}

export const DEFAULT_STYLE: StyleOptions = { width: 720, height: 480 };

const MARGIN = { top: 24, right: 150, bottom: 46, left: 64 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

const fmt = (v: number): string => v.toFixed(2);

function scale(lo: number, hi: number, rangeLo: number, rangeHi: number) {
  const span = hi - lo || 1;
  return (v: number) => rangeLo + ((v - lo) / span) * (rangeHi - rangeLo);
}

function ticks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = span / count / step;
  const refined = err >= 7.5 ? step * 10 : err >= 3.5 ? step * 5 : err >= 1.5 ? step * 2 : step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / refined) * refined; v <= hi + refined / 2; v += refined) {
    out.push(Math.abs(v) < refined / 2 ? 0 : v);
  }
  return out;
}

function tickLabel(v: number): string {
  const text = v.toPrecision(3);
  return String(Number(text));
}

interface Series {
  label: string;
  color: string;
  dashed: boolean;
  points: Array<[number, number]>;
}

function chart(
  series: Series[],
  xLabel: string,
  yLabel: string,
  style: StyleOptions,
): string {
  const points = series.flatMap((s) => s.points);
  if (points.length === 0) {
    throw new EmptyData("nothing to draw");
  }
  const xs = points.map((p) => p[0]);
  const ys = points.map((p) => p[1]);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(0, ...ys);
  const yHi = Math.max(...ys) * 1.05 || 1;
  const plotW = style.width - MARGIN.left - MARGIN.right;
  const plotH = style.height - MARGIN.top - MARGIN.bottom;
  const sx = scale(xLo, xHi, MARGIN.left, MARGIN.left + plotW);
  const sy = scale(yLo, yHi, MARGIN.top + plotH, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${style.width}" height="${style.height}" viewBox="0 0 ${style.width} ${style.height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${style.width}" height="${style.height}" fill="white"/>`,
  );

  for (const v of ticks(xLo, xHi, 6)) {
    const x = fmt(sx(v));
    parts.push(
      `<line x1="${x}" y1="${fmt(sy(yLo))}" x2="${x}" y2="${fmt(sy(yLo) + 5)}" stroke="black"/>`,
      `<text x="${x}" y="${fmt(sy(yLo) + 20)}" font-size="12" text-anchor="middle">${tickLabel(v)}</text>`,
    );
  }
  for (const v of ticks(yLo, yHi, 6)) {
    const y = fmt(sy(v));
    parts.push(
      `<line x1="${fmt(MARGIN.left - 5)}" y1="${y}" x2="${fmt(MARGIN.left)}" y2="${y}" stroke="black"/>`,
      `<text x="${fmt(MARGIN.left - 9)}" y="${fmt(sy(v) + 4)}" font-size="12" text-anchor="end">${tickLabel(v)}</text>`,
      `<line x1="${fmt(MARGIN.left)}" y1="${y}" x2="${fmt(MARGIN.left + plotW)}" y2="${y}" stroke="#dddddd"/>`,
    );
  }
  parts.push(
    `<line x1="${fmt(MARGIN.left)}" y1="${fmt(MARGIN.top)}" x2="${fmt(MARGIN.left)}" y2="${fmt(MARGIN.top + plotH)}" stroke="black"/>`,
    `<line x1="${fmt(MARGIN.left)}" y1="${fmt(MARGIN.top + plotH)}" x2="${fmt(MARGIN.left + plotW)}" y2="${fmt(MARGIN.top + plotH)}" stroke="black"/>`,
    `<text x="${fmt(MARGIN.left + plotW / 2)}" y="${fmt(style.height - 10)}" font-size="13" text-anchor="middle">${xLabel}</text>`,
    `<text x="16" y="${fmt(MARGIN.top + plotH / 2)}" font-size="13" text-anchor="middle" transform="rotate(-90 16 ${fmt(MARGIN.top + plotH / 2)})">${yLabel}</text>`,
  );

  series.forEach((s, i) => {
    const path = s.points.map(([x, y]) => `${fmt(sx(x))},${fmt(sy(y))}`).join(" ");
    const dash = s.dashed ? ' stroke-dasharray="7 4"' : "";
    parts.push(
      `<polyline points="${path}" fill="none" stroke="${s.color}" stroke-width="1.8"${dash}/>`,
    );
    const ly = MARGIN.top + 14 + i * 18;
    const lx = MARGIN.left + plotW + 12;
    parts.push(
      `<line x1="${fmt(lx)}" y1="${fmt(ly - 4)}" x2="${fmt(lx + 22)}" y2="${fmt(ly - 4)}" stroke="${s.color}" stroke-width="1.8"${dash}/>`,
      `<text x="${fmt(lx + 28)}" y="${fmt(ly)}" font-size="12">${s.label}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

const sAxisValue = (s: string): number => (s === "0" ? 0 : Number(s));

/** Solid information-vs-order curve per purity plus its dashed min-kernel
 * reference line; purity-1 curves are asserted to coincide with their
 * reference before anything is drawn. */
export function renderFig1(rows: Fig1Row[], style: StyleOptions = DEFAULT_STYLE): string {
  const byPurity = new Map<number, Fig1Row[]>();
  for (const row of rows) {
    const bucket = byPurity.get(row.purity) ?? [];
    bucket.push(row);
    byPurity.set(row.purity, bucket);
  }

  for (const [purity, bucket] of byPurity) {
    if (Math.abs(purity - 1) > 1e-12) continue;
    const ref = bucket.find((r) => r.s === "-inf");
    if (ref === undefined) {
      throw new PrerenderCheckFailed("purity-1 curve lacks its min-kernel reference row");
    }
    for (const row of bucket) {
      if (Math.abs(row.I_s - ref.I_s) > 1e-9) {
        throw new PrerenderCheckFailed(
          `purity-1 row at s=${row.s} deviates from the reference by ${Math.abs(row.I_s - ref.I_s)}`,
        );
      }
    }
  }

  const series: Series[] = [];
  let colorIndex = 0;
  const sValues = rows.filter((r) => r.s !== "-inf").map((r) => sAxisValue(r.s));
  const sLo = Math.min(...sValues);
  for (const [purity, bucket] of byPurity) {
    const color = PALETTE[colorIndex % PALETTE.length]!;
    colorIndex += 1;
    const curve = bucket
      .filter((r) => r.s !== "-inf")
      .map((r): [number, number] => [sAxisValue(r.s), r.I_s])
      .sort((a, b) => a[0] - b[0]);
    series.push({ label: `purity ${purity}`, color, dashed: false, points: curve });
    const ref = bucket.find((r) => r.s === "-inf");
    if (ref !== undefined) {
      series.push({
        label: `min kernel (${purity})`,
        color,
        dashed: true,
        points: [
          [sLo, ref.I_s],
          [0, ref.I_s],
        ],
      });
    }
  }
  return chart(series, "s", "I_s", style);
}

/** Per-order cross-term curves against the shared commutator bound. */
export function renderFig2(rows: Fig2Row[], style: StyleOptions = DEFAULT_STYLE): string {
  const byOrder = new Map<string, Fig2Row[]>();
  for (const row of rows) {
    const bucket = byOrder.get(row.order) ?? [];
    bucket.push(row);
    byOrder.set(row.order, bucket);
  }

  const series: Series[] = [];
  let colorIndex = 0;
  for (const [order, bucket] of byOrder) {
    const color = PALETTE[colorIndex % PALETTE.length]!;
    colorIndex += 1;
    const curve = bucket
      .map((r): [number, number] => [r.r, r.corollary_lhs])
      .sort((a, b) => a[0] - b[0]);
    series.push({ label: `cross term (${order})`, color, dashed: false, points: curve });
  }

  // the bound column is order-independent; verify and draw it once
  const first = [...byOrder.values()][0]!;
  for (const bucket of byOrder.values()) {
    for (let i = 0; i < bucket.length; i++) {
      const twin = first.find((r) => r.r === bucket[i]!.r);
      if (twin && Math.abs(twin.corollary_rhs - bucket[i]!.corollary_rhs) > 1e-9) {
        throw new PrerenderCheckFailed(
          `commutator bound differs between orders at r=${bucket[i]!.r}`,
        );
      }
    }
  }
  series.push({
    label: "commutator bound",
    color: "#333333",
    dashed: true,
    points: first
      .map((r): [number, number] => [r.r, r.corollary_rhs])
      .sort((a, b) => a[0] - b[0]),
  });
  return chart(series, "r", "value", style);
}
