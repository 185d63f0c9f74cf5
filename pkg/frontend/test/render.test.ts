import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { main } from "../src/cli";
import { render } from "../src/render";

const FIX = join(__dirname, "..", "fixtures");
const PNG_MAGIC = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "tsplots-"));
}

describe("render API", () => {
  it("renders the two-panel deviation figure", () => {
    const out = join(tmp(), "fig2.png");
    const result = render({
      inputs: [join(FIX, "compare_n200.csv")],
      figure: "deviation-panels",
      output: out,
    });
    expect(result.nRows).toBe(200);
    expect(readFileSync(out).subarray(0, 8)).toEqual(PNG_MAGIC);
  });

  it("renders the multi-size scatter figure", () => {
    const out = join(tmp(), "fig1.png");
    render({
      inputs: [join(FIX, "compare_n20.csv"), join(FIX, "compare_n80.csv")],
      figure: "scatter",
      output: out,
    });
    expect(readFileSync(out).subarray(0, 8)).toEqual(PNG_MAGIC);
  });

  it("is deterministic byte-for-byte", () => {
    const dir = tmp();
    const a = join(dir, "a.png");
    const b = join(dir, "b.png");
    const job = (output: string) => ({
      inputs: [join(FIX, "compare_n20.csv")],
      figure: "deviation-panels" as const,
      output,
    });
    render(job(a));
    render(job(b));
    expect(readFileSync(a).equals(readFileSync(b))).toBe(true);
  });
});

describe("cli", () => {
  it("succeeds on a full report", () => {
    const out = join(tmp(), "fig.png");
    const code = main([
      "render",
      "--input",
      join(FIX, "compare_n80.csv"),
      "--figure",
      "deviation-panels",
      "--out",
      out,
    ]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
  });

  it("exits 0 on a header-only CSV and still writes axes", () => {
    const out = join(tmp(), "empty.png");
    const code = main([
      "render",
      "--input",
      join(FIX, "empty.csv"),
      "--figure",
      "deviation-panels",
      "--out",
      out,
    ]);
    expect(code).toBe(0);
    expect(readFileSync(out).subarray(0, 8)).toEqual(PNG_MAGIC);
  });

  it("exits 2 and names the missing column on schema mismatch", () => {
    const dir = tmp();
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "j,theta_j,lambda_re\n1,0.5,0.2\n");
    const errors: string[] = [];
    const orig = console.error;
    console.error = (msg: string) => errors.push(String(msg));
    const code = main([
      "render",
      "--input",
      bad,
      "--figure",
      "deviation-panels",
      "--out",
      join(dir, "x.png"),
    ]);
    console.error = orig;
    expect(code).toBe(2);
    expect(errors.join(" ")).toContain("missing column");
  });

  it("exits 2 on unknown figure or missing args", () => {
    const orig = console.error;
    console.error = () => undefined;
    expect(main(["render", "--figure", "pie"])).toBe(2);
    expect(main(["paint"])).toBe(2);
    expect(
      main(["render", "--input", "x.csv", "--figure", "scatter"]),
    ).toBe(2);
    console.error = orig;
  });

  it("exits 2 on a missing file", () => {
    const orig = console.error;
    console.error = () => undefined;
    const code = main([
      "render",
      "--input",
      "/definitely/not/here.csv",
      "--figure",
      "scatter",
      "--out",
      join(tmp(), "x.png"),
    ]);
    console.error = orig;
    expect(code).toBe(2);
  });

  it("renders a dots-only scatter from an eig dump", () => {
    const out = join(tmp(), "eig.png");
    const code = main([
      "render",
      "--input",
      join(FIX, "eigs_n20.csv"),
      "--figure",
      "scatter",
      "--out",
      out,
    ]);
    expect(code).toBe(0);
  });
});
