// DOM bootstrap.  Everything interesting lives in console.ts and render.ts;
// this file only builds elements once and repaints them on state changes.

import { Client } from "./api.js";
import { CubeConsole } from "./console.js";
import { NET_COLS, NET_ROWS } from "./net.js";
import { render } from "./render.js";

const apiBase =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";
const ctl = new CubeConsole(new Client(apiBase));

const $ = (id: string) => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
};

const net = $("net");
net.style.gridTemplateColumns = `repeat(${NET_COLS}, 2rem)`;
net.style.gridTemplateRows = `repeat(${NET_ROWS}, 2rem)`;
const cellEls: HTMLElement[] = [];
for (let i = 0; i < 54; i++) {
  const cell = document.createElement("div");
  cell.className = "cell";
  net.appendChild(cell);
  cellEls.push(cell);
}

const seedInput = $("seed") as HTMLInputElement;
const seed = () => (seedInput.value === "" ? undefined : Number(seedInput.value));

$("scramble-virtual").addEventListener("click", () => void ctl.scrambleVirtual(seed()));
$("scramble-real").addEventListener("click", () => void ctl.scrambleReal(seed()));
$("solve-virtual").addEventListener("click", () => void ctl.solveVirtual());
$("solve-real").addEventListener("click", () => void ctl.solveReal());
$("display-toggle").addEventListener("change", () => ctl.toggleDisplay());

window.addEventListener("keydown", (e) => {
  if (e.target instanceof HTMLInputElement) return;
  if (e.ctrlKey || e.metaKey || e.altKey) return;
  if (ctl.handleKey(e.key, e.shiftKey)) e.preventDefault();
});

ctl.subscribe((state) => {
  const m = render(state);
  m.cells.forEach((cell, i) => {
    const el = cellEls[i]!;
    el.style.backgroundColor = cell.color;
    el.style.gridRow = String(cell.row + 1);
    el.style.gridColumn = String(cell.col + 1);
  });
  $("panel").hidden = !m.panelVisible;
  $("user-line").textContent = m.userLine;
  $("algorithm-line").textContent = m.algorithmLine;
  $("counter-line").textContent = m.counterLine;
  $("step-line").textContent = m.stepLine;
  $("program-line").textContent = m.programLine;
  $("message").textContent = m.message;
  const dot = $("connection");
  dot.textContent = m.connection;
  dot.className = `connection ${m.connection}`;
});

void ctl.start();
