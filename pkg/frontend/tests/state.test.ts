import { describe, expect, it } from "vitest";

import { applyScript, initialState, reduce, representative } from "../src/state.js";
import type { GraphView } from "../src/types.js";

import viewS0 from "./fixtures/view_s0.json";
import viewFixpoint from "./fixtures/view_fixpoint.json";

const view = viewS0 as unknown as GraphView;
const fixpoint = viewFixpoint as unknown as GraphView;

describe("reducer invariants", () => {
  it("unfolds only clusters of the active level", () => {
    const state = initialState(fixpoint); // active level 3
    expect(reduce(fixpoint, state, { type: "unfold", cluster: "c1-0" })).toBe(state);
    const next = reduce(fixpoint, state, { type: "unfold", cluster: "c3-0" });
    expect(next.unfolded).toEqual(["c3-0"]);
  });

  it("unfold is idempotent and keeps the set sorted", () => {
    let state = initialState(view);
    state = reduce(view, state, { type: "unfold", cluster: "c1-2" });
    state = reduce(view, state, { type: "unfold", cluster: "c1-0" });
    state = reduce(view, state, { type: "unfold", cluster: "c1-0" });
    expect(state.unfolded).toEqual(["c1-0", "c1-2"]);
  });

  it("folding remaps a hidden selection to its cluster", () => {
    let state = applyScript(view, initialState(view), [
      { type: "unfold", cluster: "c1-0" },
      { type: "select", node: "u1" },
      { type: "fold", cluster: "c1-0" },
    ]);
    expect(state.selected).toBe("c1-0");
  });

  it("changing level clears the unfolded set and remaps selection", () => {
    let state = applyScript(fixpoint, initialState(fixpoint), [
      { type: "setLevel", level: 1 },
      { type: "select", node: "c1-2" },
      { type: "setLevel", level: 2 },
    ]);
    expect(state.unfolded).toEqual([]);
    expect(state.selected).toBe("c2-0");
  });

  it("swapGraph keeps only the pending control values", () => {
    let state = applyScript(view, initialState(view), [
      { type: "unfold", cluster: "c1-0" },
      { type: "select", node: "u0" },
      { type: "pendingThreshold", value: 0.5 },
    ]);
    state = reduce(view, state, { type: "swapGraph", view: fixpoint });
    expect(state.unfolded).toEqual([]);
    expect(state.selected).toBeNull();
    expect(state.pendingThreshold).toBe(0.5);
    expect(state.level).toBe(fixpoint.level_count);
  });
});

describe("representative", () => {
  it("maps a unit to its cluster while folded, itself when unfolded", () => {
    const folded = initialState(view);
    expect(representative(view, folded, "u0")).toBe("c1-0");
    const open = reduce(view, folded, { type: "unfold", cluster: "c1-0" });
    expect(representative(view, open, "u0")).toBe("u0");
  });

  it("maps a lower-level cluster to its stand-in at the active level", () => {
    const state = initialState(fixpoint); // level 3
    expect(representative(fixpoint, state, "c1-2")).toBe("c3-0");
  });
});
