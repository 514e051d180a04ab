#!/usr/bin/env node
import { readFileSync, writeFileSync } from "fs";
import { Resvg } from "@resvg/resvg-js";
import { EmptyData, PrerenderCheckFailed, SchemaMismatch } from "./errors";
import { parseFig1, parseFig2 } from "./schema";
import { DEFAULT_STYLE, StyleOptions, renderFig1, renderFig2 } from "./render";

export interface FigureSpec {
  kind: "fig1" | "fig2";
  input: string;
  output: string;
  style?: Partial<StyleOptions>;
}

/** Render the CSV at spec.input to spec.output (.svg or .png). */
export function render(spec: FigureSpec): void {
  const text = readFileSync(spec.input, "utf8");
  const style = { ...DEFAULT_STYLE, ...spec.style };
  const svg = spec.kind === "fig1" ? renderFig1(parseFig1(text), style) : renderFig2(parseFig2(text), style);
  if (spec.output.endsWith(".svg")) {
    writeFileSync(spec.output, svg);
  } else if (spec.output.endsWith(".png")) {
    writeFileSync(spec.output, new Resvg(svg).render().asPng());
  } else {
    throw new Error(`unsupported output extension: ${spec.output} (use .svg or .png)`);
  }
}

function parseArgs(argv: string[]): FigureSpec {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key?.startsWith("--") || value === undefined) {
      throw new Error(`malformed arguments near ${key ?? "<end>"}`);
    }
    opts.set(key.slice(2), value);
  }
  const kind = opts.get("kind");
  const input = opts.get("in");
  const output = opts.get("out");
  if ((kind !== "fig1" && kind !== "fig2") || !input || !output) {
    throw new Error("usage: plot --kind fig1|fig2 --in data.csv --out figure.png|svg [--width W] [--height H]");
  }
  const style: Partial<StyleOptions> = {};
  if (opts.has("width")) style.width = Number(opts.get("width"));
  if (opts.has("height")) style.height = Number(opts.get("height"));
  return { kind, input, output, style };
}

export function main(argv: string[]): number {
  try {
    render(parseArgs(argv));
    return 0;
  } catch (err) {
    if (
      err instanceof SchemaMismatch ||
      err instanceof EmptyData ||
      err instanceof PrerenderCheckFailed
    ) {
      console.error(`plot: ${err.name}: ${err.message}`);
      return 2;
    }
    console.error(`plot: error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
