// Unfolded-net geometry for the 54-facelet state string.
//
// The string lists faces U, R, F, D, L, B, nine stickers each in reading
// order.  The net is the usual cross:
//
//         U
//       L F R B
//         D
//
// laid out on a 9-row by 12-column grid.

import type { Face } from "./moves.js";

export const SOLVED_FACELETS =
  "UUUUUUUUURRRRRRRRRFFFFFFFFFDDDDDDDDDLLLLLLLLLBBBBBBBBB";

export const NET_ROWS = 9;
export const NET_COLS = 12;

const FACE_ORDER: readonly Face[] = ["U", "R", "F", "D", "L", "B"];

const FACE_ORIGIN: Record<Face, readonly [number, number]> = {
  U: [0, 3],
  R: [3, 6],
  F: [3, 3],
  D: [6, 3],
  L: [3, 0],
  B: [3, 9],
};

export const FACE_COLORS: Record<Face, string> = {
  U: "#f5f5f5",
  R: "#c62828",
  F: "#2e7d32",
  D: "#f9d923",
  L: "#ef6c00",
  B: "#1565c0",
};

export interface NetCell {
  index: number;
  row: number;
  col: number;
}

/** Grid position of every facelet index, in index order. */
export function netLayout(): NetCell[] {
  const cells: NetCell[] = [];
  for (let index = 0; index < 54; index++) {
    const face = FACE_ORDER[Math.floor(index / 9)]!;
    const [r0, c0] = FACE_ORIGIN[face];
    const within = index % 9;
    cells.push({
      index,
      row: r0 + Math.floor(within / 3),
      col: c0 + (within % 3),
    });
  }
  return cells;
}

export function isFaceletString(text: string): boolean {
  return text.length === 54 && [...text].every((ch) => ch in FACE_COLORS);
}

export function colorOf(faceLetter: string): string {
  const color = FACE_COLORS[faceLetter as Face];
  if (!color) throw new Error(`not a face letter: ${JSON.stringify(faceLetter)}`);
  return color;
}
