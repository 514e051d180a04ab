import Papa from "papaparse";
import { z } from "zod";
import { EmptyData, SchemaMismatch } from "./errors";

const finiteNumber = z.coerce.number().finite();

const fig1Row = z.object({
  purity: finiteNumber,
  s: z.string().refine(
    (v) => v === "-inf" || v === "0" || (Number.isFinite(Number(v)) && Number(v) < 0),
    { message: "s must be '-inf', '0', or a negative number" },
  ),
  I_s: finiteNumber,
});

const fig2Row = z.object({
  r: finiteNumber,
  order: z.string().min(1),
  product: finiteNumber,
  corollary_lhs: finiteNumber,
  corollary_rhs: finiteNumber,
  lower_bound_rhs: finiteNumber,
});

export type Fig1Row = z.infer<typeof fig1Row>;
export type Fig2Row = z.infer<typeof fig2Row>;

export const FIG1_COLUMNS = ["purity", "s", "I_s"] as const;
export const FIG2_COLUMNS = [
  "r",
  "order",
  "product",
  "corollary_lhs",
  "corollary_rhs",
  "lower_bound_rhs",
] as const;

function parseCsv<T>(
  text: string,
  columns: readonly string[],
  row: z.ZodType<T, z.ZodTypeDef, unknown>,
): T[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    comments: "#",
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaMismatch(`CSV parse failure: ${parsed.errors[0]!.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  if (fields.length !== columns.length || columns.some((c, i) => fields[i] !== c)) {
    throw new SchemaMismatch(
      `expected columns [${columns.join(",")}], got [${fields.join(",")}]`,
    );
  }
  if (parsed.data.length === 0) {
    throw new EmptyData("CSV has a header but no data rows");
  }
  return parsed.data.map((raw, i) => {
    const check = row.safeParse(raw);
    if (!check.success) {
      throw new SchemaMismatch(`row ${i + 1}: ${check.error.issues[0]!.message}`);
    }
    return check.data;
  });
}

export function parseFig1(text: string): Fig1Row[] {
  return parseCsv(text, FIG1_COLUMNS, fig1Row);
}

export function parseFig2(text: string): Fig2Row[] {
  return parseCsv(text, FIG2_COLUMNS, fig2Row);
}
