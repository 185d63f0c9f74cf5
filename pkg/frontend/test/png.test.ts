import { inflateSync } from "node:zlib";
import { describe, expect, it } from "vitest";
import { encodePng } from "../src/png";
import { Raster } from "../src/raster";

function decode(buf: Buffer) {
  expect(buf.subarray(0, 8)).toEqual(
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
  );
  const width = buf.readUInt32BE(16);
  const height = buf.readUInt32BE(20);
  // collect IDAT payloads
  let at = 8;
  const idat: Buffer[] = [];
  while (at < buf.length) {
    const len = buf.readUInt32BE(at);
    const type = buf.toString("ascii", at + 4, at + 8);
    if (type === "IDAT") idat.push(buf.subarray(at + 8, at + 8 + len));
    at += 12 + len;
  }
  const raw = inflateSync(Buffer.concat(idat));
  return { width, height, raw };
}

describe("png encoder", () => {
  it("encodes dimensions and pixels recoverably", () => {
    const r = new Raster(7, 5);
    r.set(3, 2, [10, 20, 30, 255]);
    const { width, height, raw } = decode(encodePng(r.width, r.height, r.data));
    expect(width).toBe(7);
    expect(height).toBe(5);
    expect(raw).toHaveLength(5 * (1 + 7 * 4));
    expect(raw[2 * (1 + 7 * 4)]).toBe(0); // filter byte
    const px = 2 * (1 + 7 * 4) + 1 + 3 * 4;
    expect([...raw.subarray(px, px + 4)]).toEqual([10, 20, 30, 255]);
  });

  it("rejects a wrong-sized buffer", () => {
    expect(() => encodePng(4, 4, new Uint8Array(3))).toThrow();
  });
});

describe("raster primitives", () => {
  it("draws clipped discs", () => {
    const r = new Raster(10, 10);
    r.disc(0, 0, 3, [1, 2, 3, 255]); // mostly off-canvas; must not throw
    expect(r.get(0, 0)).toEqual([1, 2, 3, 255]);
    expect(r.get(9, 9)).toEqual([255, 255, 255, 255]);
  });

  it("renders glyphs as ink", () => {
    const r = new Raster(20, 12);
    r.text(1, 1, "42", [0, 0, 0, 255]);
    let ink = 0;
    for (let y = 0; y < 12; y++) {
      for (let x = 0; x < 20; x++) {
        if (r.get(x, y)[0] === 0) ink++;
      }
    }
    expect(ink).toBeGreaterThan(10);
  });
});
