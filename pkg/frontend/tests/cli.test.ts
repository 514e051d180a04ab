import { mkdtempSync, readFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";
import { main } from "../src";

const golden = (name: string) => join(__dirname, "..", "testdata", name);
const scratch = () => mkdtempSync(join(tmpdir(), "skewplot-"));

describe("plot CLI", () => {
  it("renders fig1 and fig2 to SVG and PNG from the golden CSVs", () => {
    const dir = scratch();
    for (const kind of ["fig1", "fig2"] as const) {
      const svgPath = join(dir, `${kind}.svg`);
      const pngPath = join(dir, `${kind}.png`);
      expect(main(["--kind", kind, "--in", golden(`${kind}.csv`), "--out", svgPath])).toBe(0);
      expect(main(["--kind", kind, "--in", golden(`${kind}.csv`), "--out", pngPath])).toBe(0);
      expect(readFileSync(svgPath, "utf8")).toContain("</svg>");
      const png = readFileSync(pngPath);
      expect([...png.subarray(0, 4)]).toEqual([0x89, 0x50, 0x4e, 0x47]);
      expect(png.length).toBeGreaterThan(1000);
    }
  });

  it("produces byte-identical output on repeated runs", () => {
    const dir = scratch();
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    main(["--kind", "fig1", "--in", golden("fig1.csv"), "--out", a]);
    main(["--kind", "fig1", "--in", golden("fig1.csv"), "--out", b]);
    expect(readFileSync(a, "utf8")).toBe(readFileSync(b, "utf8"));

    const pa = join(dir, "a.png");
    const pb = join(dir, "b.png");
    main(["--kind", "fig2", "--in", golden("fig2.csv"), "--out", pa]);
    main(["--kind", "fig2", "--in", golden("fig2.csv"), "--out", pb]);
    expect(readFileSync(pa)).toEqual(readFileSync(pb));
  });

  it("maps data errors to exit 2 and usage errors to exit 1", () => {
    const dir = scratch();
    expect(main(["--kind", "fig1", "--in", golden("fig2.csv"), "--out", join(dir, "x.svg")])).toBe(2);
    expect(main(["--kind", "fig3", "--in", golden("fig1.csv"), "--out", join(dir, "x.svg")])).toBe(1);
    expect(main(["--kind", "fig1", "--in", golden("fig1.csv"), "--out", join(dir, "x.gif")])).toBe(1);
  });
});
