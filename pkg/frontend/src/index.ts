export { EmptyData, PrerenderCheckFailed, SchemaMismatch } from "./errors";
export { FIG1_COLUMNS, FIG2_COLUMNS, parseFig1, parseFig2 } from "./schema";
export type { Fig1Row, Fig2Row } from "./schema";
export { DEFAULT_STYLE, renderFig1, renderFig2 } from "./render";
export type { StyleOptions } from "./render";
export { main, render } from "./cli";
export type { FigureSpec } from "./cli";
