// Move notation, mirroring the solver service: capital letter = 90 degree
// clockwise turn of that face, apostrophe = counter-clockwise, 2 = half turn.
// The panel displays moves packed together ("LUD'"); the service sends them
// space-separated ("L U D'"); the parser accepts both.

export type Face = "U" | "R" | "F" | "D" | "L" | "B";
export type Turn = 1 | 2 | 3;

export interface Move {
  face: Face;
  turn: Turn;
}

export const FACES: readonly Face[] = ["U", "R", "F", "D", "L", "B"];

export function isFace(ch: string): ch is Face {
  return (FACES as readonly string[]).includes(ch);
}

export function formatMove(m: Move): string {
  if (m.turn === 2) return m.face + "2";
  if (m.turn === 3) return m.face + "'";
  return m.face;
}

/** Packed panel notation: no separators, e.g. "D2R'F". */
export function formatMoves(moves: readonly Move[]): string {
  return moves.map(formatMove).join("");
}

export function parseMoves(text: string): Move[] {
  const out: Move[] = [];
  let i = 0;
  while (i < text.length) {
    const ch = text[i]!;
    if (ch === " " || ch === "\t" || ch === "\n") {
      i += 1;
      continue;
    }
    if (!isFace(ch)) {
      throw new Error(`bad move token at position ${i}: ${JSON.stringify(ch)}`);
    }
    i += 1;
    let turn: Turn = 1;
    if (text[i] === "2") {
      turn = 2;
      i += 1;
    } else if (text[i] === "'") {
      turn = 3;
      i += 1;
    }
    out.push({ face: ch, turn });
  }
  return out;
}

/** Number of moves in a notation string ("" counts as zero). */
export function countMoves(text: string): number {
  return parseMoves(text).length;
}
