import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { rebuildRequest } from "../src/controls.js";
import { initialState, reduce } from "../src/state.js";
import type { GraphView } from "../src/types.js";

import viewS0 from "./fixtures/view_s0.json";

const view = viewS0 as unknown as GraphView;

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("rebuild requests", () => {
  it("carries the pending control values", () => {
    let state = initialState(view);
    state = reduce(view, state, { type: "pendingThreshold", value: 0.5 });
    state = reduce(view, state, { type: "pendingLevels", value: 1 });
    expect(rebuildRequest(view, state)).toEqual({
      mode: "coauthor",
      threshold: 0.5,
      levels: 1,
    });
  });
});

describe("api client", () => {
  it("aborts the previous build when a new one starts", async () => {
    const seen: AbortSignal[] = [];
    vi.stubGlobal(
      "fetch",
      vi.fn((_url: string, init?: RequestInit) => {
        const signal = init?.signal as AbortSignal;
        seen.push(signal);
        return new Promise<Response>((resolve, reject) => {
          signal.addEventListener("abort", () => reject(new DOMException("x", "AbortError")));
          setTimeout(
            () =>
              resolve(
                new Response(JSON.stringify({ graph_id: "g" }), {
                  status: 201,
                  headers: { "Content-Type": "application/json" },
                }),
              ),
            5,
          );
        });
      }),
    );
    const client = new ApiClient("http://example.test");
    const first = client.buildGraph("c", { mode: "coauthor", threshold: 0.1, levels: null });
    const second = client.buildGraph("c", { mode: "coauthor", threshold: 0.2, levels: null });
    await expect(first).rejects.toThrow();
    await expect(second).resolves.toMatchObject({ graph_id: "g" });
    expect(seen[0]!.aborted).toBe(true);
    expect(seen[1]!.aborted).toBe(false);
  });

  it("raises typed errors with the server's error code", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(
          JSON.stringify({ error: { code: "unknown_graph", message: "nope" } }),
          { status: 404, headers: { "Content-Type": "application/json" } },
        ),
      ),
    );
    const client = new ApiClient("http://example.test");
    const failure = client.getView("beef").catch((e) => e);
    const error = await failure;
    expect(error).toBeInstanceOf(ApiError);
    expect(error.code).toBe("unknown_graph");
    expect(error.status).toBe(404);
  });
});
