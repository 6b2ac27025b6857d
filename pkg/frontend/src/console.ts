// Console controller: one service session per page, requests serialized,
// server-authoritative view.  The only cube knowledge here is notation; the
// rendered facelets always come from the last service response, and a user
// move is echoed in the panel optimistically, never applied to the cube.

import { ApiError, type ServiceClient, type SessionView } from "./api.js";
import { countMoves, formatMoves, isFace, parseMoves } from "./moves.js";
import { SOLVED_FACELETS } from "./net.js";

export type Connection = "idle" | "ok" | "offline";

export interface ViewState {
  facelets: string;
  userMoves: string;
  solution: string;
  cursor: number;
  totalMoves: number;
  panelVisible: boolean;
  pendingMove: string | null;
  message: string;
  connection: Connection;
  sessionId: string | null;
  program: string[] | null;
  serialHex: string | null;
  programMs: number | null;
}

function initialView(): ViewState {
  return {
    facelets: SOLVED_FACELETS,
    userMoves: "",
    solution: "",
    cursor: 0,
    totalMoves: 0,
    panelVisible: true,
    pendingMove: null,
    message: "",
    connection: "idle",
    sessionId: null,
    program: null,
    serialHex: null,
    programMs: null,
  };
}

/** Normalize service notation (space-separated) to panel notation (packed). */
function packed(notation: string): string {
  return formatMoves(parseMoves(notation));
}

export class CubeConsole {
  private view = initialView();
  private listeners: Array<(v: ViewState) => void> = [];
  private chain: Promise<void> = Promise.resolve();

  constructor(private readonly client: ServiceClient) {}

  get state(): ViewState {
    return this.view;
  }

  subscribe(listener: (v: ViewState) => void): () => void {
    this.listeners.push(listener);
    listener(this.view);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private update(patch: Partial<ViewState>): void {
    this.view = { ...this.view, ...patch };
    for (const listener of this.listeners) listener(this.view);
  }

  private applySession(s: SessionView): void {
    this.update({
      facelets: s.state,
      userMoves: packed(s.user_moves),
      solution: packed(s.solution),
      cursor: s.cursor,
      totalMoves: s.total_moves,
      sessionId: s.id,
      connection: "ok",
      pendingMove: null,
    });
  }

  /** Serialize tasks; failures are surfaced inline and never break the chain. */
  private run(task: () => Promise<void>): Promise<void> {
    const next = this.chain.then(task).catch((err) => this.fail(err));
    this.chain = next;
    return next;
  }

  private fail(err: unknown): void {
    if (err instanceof ApiError) {
      this.update({
        message: `${err.error}: ${err.detail}`,
        pendingMove: null,
        connection: "ok",
      });
    } else {
      this.update({
        message: "service unreachable",
        pendingMove: null,
        connection: "offline",
      });
    }
  }

  /** Resolves once every queued request has settled. */
  async idle(): Promise<void> {
    let current: Promise<void>;
    do {
      current = this.chain;
      await current;
    } while (current !== this.chain);
  }

  /** Open the page's session. */
  start(state: string = SOLVED_FACELETS): Promise<void> {
    return this.run(async () => {
      this.applySession(await this.client.createSession(state));
    });
  }

  /** Keyboard entry point; true when the key was consumed. */
  handleKey(key: string, shift: boolean): boolean {
    if (key === "ArrowRight") {
      void this.stepNext();
      return true;
    }
    if (key === "ArrowLeft") {
      void this.stepPrev();
      return true;
    }
    const letter = key.length === 1 ? key.toUpperCase() : key;
    if (isFace(letter)) {
      void this.userMove(shift ? letter + "'" : letter);
      return true;
    }
    return false;
  }

  userMove(move: string): Promise<void> {
    this.update({ pendingMove: move, message: "" });
    return this.run(async () => {
      this.applySession(await this.client.move(this.requireSession(), move));
    });
  }

  stepNext(): Promise<void> {
    return this.step("next");
  }

  stepPrev(): Promise<void> {
    return this.step("prev");
  }

  private step(direction: "next" | "prev"): Promise<void> {
    this.update({ message: "" });
    return this.run(async () => {
      this.applySession(await this.client.step(this.requireSession(), direction));
    });
  }

  toggleDisplay(): void {
    this.update({ panelVisible: !this.view.panelVisible });
  }

  solveVirtual(): Promise<void> {
    return this.solveCurrent(false);
  }

  /** Like solveVirtual, but keeps the machine program for the operator. */
  solveReal(): Promise<void> {
    return this.solveCurrent(true);
  }

  private solveCurrent(real: boolean): Promise<void> {
    this.update({ message: "" });
    return this.run(async () => {
      const resp = await this.client.solve(this.view.facelets);
      const solution = packed(resp.solution);
      this.update({
        solution,
        totalMoves: countMoves(this.view.userMoves) + countMoves(solution),
        connection: "ok",
        program: real ? resp.program : null,
        serialHex: real ? resp.serial_hex : null,
        programMs: real ? resp.total_ms : null,
        message: real ? "solution program ready for the rig" : "",
      });
    });
  }

  scrambleVirtual(seed?: number): Promise<void> {
    return this.scrambleCurrent("virtual", seed);
  }

  scrambleReal(seed?: number): Promise<void> {
    return this.scrambleCurrent("real", seed);
  }

  private scrambleCurrent(mode: "virtual" | "real", seed?: number): Promise<void> {
    this.update({ message: "" });
    return this.run(async () => {
      const scramble = await this.client.scramble(mode, seed);
      this.applySession(await this.client.createSession(scramble.state));
      const real = mode === "real" && scramble.program !== undefined;
      this.update({
        program: real ? scramble.program! : null,
        serialHex: real ? scramble.serial_hex ?? null : null,
        programMs: real ? scramble.total_ms ?? null : null,
        message: real
          ? `scrambled (seed ${scramble.seed}); scramble program ready for the rig`
          : `scrambled (seed ${scramble.seed})`,
      });
    });
  }

  private requireSession(): string {
    const id = this.view.sessionId;
    if (id === null) throw new Error("no active session");
    return id;
  }
}
