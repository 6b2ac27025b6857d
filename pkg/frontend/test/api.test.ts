import { describe, expect, it } from "vitest";

import { ApiError, Client } from "../src/api.js";

interface Call {
  url: string;
  method: string;
  body: unknown;
}

function clientWith(status: number, payload: unknown): { client: Client; calls: Call[] } {
  const calls: Call[] = [];
  const client = new Client("http://rig", async (url, init) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body === undefined ? undefined : JSON.parse(init.body as string),
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });
  });
  return { client, calls };
}

describe("service client", () => {
  it("posts solve requests and returns the parsed body", async () => {
    const reply = { solution: "R U'", program: ["BOT_CW"], serial_hex: "630a", total_ms: 2028 };
    const { client, calls } = clientWith(200, reply);
    const got = await client.solve("UUU...");
    expect(got).toEqual(reply);
    expect(calls).toEqual([
      { url: "http://rig/solve", method: "POST", body: { state: "UUU..." } },
    ]);
  });

  it("includes the seed only when given", async () => {
    const { client, calls } = clientWith(200, { state: "", moves: "", seed: 5 });
    await client.scramble("virtual");
    await client.scramble("real", 5);
    expect(calls[0]!.body).toEqual({ mode: "virtual" });
    expect(calls[1]!.body).toEqual({ mode: "real", seed: 5 });
  });

  it("addresses session endpoints by id", async () => {
    const view = { id: "s0001", state: "", user_moves: "", solution: "", cursor: 0, total_moves: 0 };
    const { client, calls } = clientWith(200, view);
    await client.createSession("UUU");
    await client.session("s0001");
    await client.move("s0001", "L");
    await client.step("s0001", "next");
    expect(calls.map((c) => [c.method, c.url])).toEqual([
      ["POST", "http://rig/sessions"],
      ["GET", "http://rig/sessions/s0001"],
      ["POST", "http://rig/sessions/s0001/moves"],
      ["POST", "http://rig/sessions/s0001/step"],
    ]);
    expect(calls[2]!.body).toEqual({ move: "L" });
    expect(calls[3]!.body).toEqual({ direction: "next" });
  });

  it("turns error bodies into ApiError with the service's name", async () => {
    const { client } = clientWith(400, { error: "PermParity", detail: "edge parity is odd" });
    const err = await client.solve("bad").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(400);
    expect((err as ApiError).error).toBe("PermParity");
    expect((err as ApiError).detail).toBe("edge parity is odd");
  });

  it("survives error replies without a JSON body", async () => {
    const client = new Client("http://rig", async () => new Response("gone", { status: 502 }));
    const err = await client.solve("x").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).error).toBe("UnknownError");
  });
});
