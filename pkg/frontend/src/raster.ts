/** Software canvas: RGBA pixel buffer with the few primitives the plots need. */

export type Color = readonly [number, number, number, number];

export const WHITE: Color = [255, 255, 255, 255];
export const BLACK: Color = [20, 20, 20, 255];
export const GRAY: Color = [170, 170, 170, 255];
export const BLUE: Color = [40, 90, 200, 255];
export const RED: Color = [210, 50, 40, 255];
export const PALETTE: Color[] = [
  [40, 90, 200, 255],
  [210, 130, 30, 255],
  [30, 150, 90, 255],
  [150, 60, 180, 255],
];

// 5x7 bitmap glyphs, one 5-bit mask per row, top to bottom
const GLYPHS: Record<string, number[]> = {
  "0": [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
  "1": [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
  "2": [0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f],
  "3": [0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e],
  "4": [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
  "5": [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
  "6": [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
  "7": [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  "8": [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
  "9": [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
  ".": [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  "-": [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  "+": [0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00],
  "(": [0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02],
  ")": [0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08],
  "/": [0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10],
  e: [0x00, 0x00, 0x0e, 0x11, 0x1f, 0x10, 0x0e],
  t: [0x08, 0x08, 0x1c, 0x08, 0x08, 0x09, 0x06],
  h: [0x10, 0x10, 0x16, 0x19, 0x11, 0x11, 0x11],
  a: [0x00, 0x00, 0x0e, 0x01, 0x0f, 0x11, 0x0f],
  d: [0x01, 0x01, 0x0d, 0x13, 0x11, 0x11, 0x0f],
  l: [0x0c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e],
  m: [0x00, 0x00, 0x1a, 0x15, 0x15, 0x15, 0x15],
  R: [0x1e, 0x11, 0x11, 0x1e, 0x14, 0x12, 0x11],
  I: [0x0e, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e],
  " ": [0, 0, 0, 0, 0, 0, 0],
};

export class Raster {
  readonly data: Uint8Array;

  constructor(readonly width: number, readonly height: number, fill: Color = WHITE) {
    this.data = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.data.set(fill, i * 4);
    }
  }

  set(x: number, y: number, c: Color): void {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    this.data.set(c, (y * this.width + x) * 4);
  }

  get(x: number, y: number): Color {
    const at = (y * this.width + x) * 4;
    return [this.data[at], this.data[at + 1], this.data[at + 2], this.data[at + 3]];
  }

  disc(cx: number, cy: number, r: number, c: Color): void {
    for (let y = Math.floor(cy - r); y <= Math.ceil(cy + r); y++) {
      for (let x = Math.floor(cx - r); x <= Math.ceil(cx + r); x++) {
        if ((x - cx) ** 2 + (y - cy) ** 2 <= r * r + 0.25) this.set(x, y, c);
      }
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, c: Color): void {
    const steps = Math.max(Math.abs(x1 - x0), Math.abs(y1 - y0), 1);
    for (let i = 0; i <= steps; i++) {
      const t = i / steps;
      this.set(x0 + t * (x1 - x0), y0 + t * (y1 - y0), c);
    }
  }

  rect(x0: number, y0: number, x1: number, y1: number, c: Color): void {
    this.line(x0, y0, x1, y0, c);
    this.line(x1, y0, x1, y1, c);
    this.line(x1, y1, x0, y1, c);
    this.line(x0, y1, x0, y0, c);
  }

  text(x: number, y: number, s: string, c: Color, scale = 1): void {
    let pen = x;
    for (const ch of s) {
      const glyph = GLYPHS[ch] ?? GLYPHS[" "];
      for (let row = 0; row < 7; row++) {
        for (let col = 0; col < 5; col++) {
          if ((glyph[row] >> (4 - col)) & 1) {
            for (let dy = 0; dy < scale; dy++) {
              for (let dx = 0; dx < scale; dx++) {
                this.set(pen + col * scale + dx, y + row * scale + dy, c);
              }
            }
          }
        }
      }
      pen += 6 * scale;
    }
  }

  textWidth(s: string, scale = 1): number {
    return s.length * 6 * scale;
  }
}
