import { describe, expect, it } from "vitest";

import {
  FACES,
  countMoves,
  formatMove,
  formatMoves,
  parseMoves,
  type Move,
  type Turn,
} from "../src/moves.js";

describe("notation", () => {
  it("parses the panel's packed form", () => {
    expect(parseMoves("D2R'F")).toEqual([
      { face: "D", turn: 2 },
      { face: "R", turn: 3 },
      { face: "F", turn: 1 },
    ]);
  });

  it("parses the service's spaced form identically", () => {
    expect(parseMoves("D2 R' F")).toEqual(parseMoves("D2R'F"));
    expect(parseMoves("L U D'")).toEqual(parseMoves("LUD'"));
  });

  it("round-trips all 18 moves", () => {
    for (const face of FACES) {
      for (const turn of [1, 2, 3] as Turn[]) {
        const move: Move = { face, turn };
        expect(parseMoves(formatMove(move))).toEqual([move]);
      }
    }
  });

  it("round-trips packed sequences", () => {
    for (const text of ["", "U", "LUD'", "D2R'F", "R2L2B'U F2"]) {
      const moves = parseMoves(text);
      expect(parseMoves(formatMoves(moves))).toEqual(moves);
    }
  });

  it("rejects unknown tokens with a position", () => {
    expect(() => parseMoves("LXD")).toThrow(/position 1/);
    expect(() => parseMoves("L 2")).toThrow(/position 2/);
  });

  it("counts moves", () => {
    expect(countMoves("")).toBe(0);
    expect(countMoves("LUD'")).toBe(3);
    expect(countMoves("D2 R' F")).toBe(3);
  });
});
