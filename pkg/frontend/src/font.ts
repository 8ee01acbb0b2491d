/** 5x7 bitmap glyphs for tick labels in PNG output (digits and symbols). */

const GLYPHS: Record<string, number[]> = {
  "0": [0x1f, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1f],
  "1": [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x1f],
  "2": [0x1f, 0x01, 0x01, 0x1f, 0x10, 0x10, 0x1f],
  "3": [0x1f, 0x01, 0x01, 0x0f, 0x01, 0x01, 0x1f],
  "4": [0x11, 0x11, 0x11, 0x1f, 0x01, 0x01, 0x01],
  "5": [0x1f, 0x10, 0x10, 0x1f, 0x01, 0x01, 0x1f],
  "6": [0x1f, 0x10, 0x10, 0x1f, 0x11, 0x11, 0x1f],
  "7": [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  "8": [0x1f, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x1f],
  "9": [0x1f, 0x11, 0x11, 0x1f, 0x01, 0x01, 0x1f],
  "-": [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  "+": [0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00],
  ".": [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  e: [0x00, 0x00, 0x0e, 0x11, 0x1f, 0x10, 0x0e],
  " ": [0, 0, 0, 0, 0, 0, 0],
};

import { Canvas } from "./png.js";

export function drawText(canvas: Canvas, x: number, y: number, text: string,
                         rgb: [number, number, number]): void {
  let cx = x;
  for (const ch of text) {
    const glyph = GLYPHS[ch] ?? GLYPHS[" "];
    for (let row = 0; row < 7; row++) {
      for (let col = 0; col < 5; col++) {
        if ((glyph[row] >> (4 - col)) & 1) {
          canvas.set(cx + col, y + row, rgb);
        }
      }
    }
    cx += 6;
  }
}
