// Pure projection of ViewState into the strings and cell colors the DOM
// shows.  Keeping this a plain function is what lets the flow tests run
// without a browser.

import type { ViewState } from "./console.js";
import { countMoves } from "./moves.js";
import { colorOf, netLayout } from "./net.js";

export interface CellPaint {
  index: number;
  row: number;
  col: number;
  color: string;
  letter: string;
}

export interface RenderModel {
  cells: CellPaint[];
  panelVisible: boolean;
  userLine: string;
  algorithmLine: string;
  counterLine: string;
  stepLine: string;
  programLine: string;
  message: string;
  connection: string;
}

const LAYOUT = netLayout();

export function render(v: ViewState): RenderModel {
  const userShown = v.pendingMove ? v.userMoves + v.pendingMove + " ..." : v.userMoves;
  const userCount = countMoves(v.userMoves);
  const algorithmCount = countMoves(v.solution);
  let programLine = "";
  if (v.program !== null) {
    const seconds = v.programMs === null ? "?" : (v.programMs / 1000).toFixed(1);
    programLine = `${v.program.join(" ")} | serial ${v.serialHex ?? "?"} | ${seconds} s`;
  }
  return {
    cells: LAYOUT.map(({ index, row, col }) => ({
      index,
      row,
      col,
      color: colorOf(v.facelets[index]!),
      letter: v.facelets[index]!,
    })),
    panelVisible: v.panelVisible,
    userLine: `user  ${userShown}`,
    algorithmLine: `algorithm  ${v.solution}`,
    counterLine: `total moves ${v.totalMoves} = ${userCount} user + ${algorithmCount} algorithm`,
    stepLine: `step ${v.cursor} / ${v.totalMoves}`,
    programLine,
    message: v.message,
    connection: v.connection,
  };
}
