import { describe, expect, it } from "vitest";

import { buildPanel } from "../src/panel.js";
import type { UnitDocumentsResponse } from "../src/types.js";

import docsU1 from "./fixtures/docs_u1.json";

const response = docsU1 as unknown as UnitDocumentsResponse;

describe("document panel", () => {
  it("lists exactly the author's three documents", () => {
    const panel = buildPanel(response);
    expect(panel.label).toBe("BETA, B.");
    expect(panel.entries.map((e) => e.docId)).toEqual(["D1", "D2", "D3"]);
  });

  it("shows title and year per entry", () => {
    const panel = buildPanel(response);
    expect(panel.entries[0]).toMatchObject({ title: "Interface alloys", year: 2001 });
  });

  it("offers co-units for hypertext navigation, excluding the unit itself", () => {
    const panel = buildPanel(response);
    for (const entry of panel.entries) {
      expect(entry.coUnits.some((u) => u.id === panel.unit)).toBe(false);
    }
    expect(panel.entries[2]!.coUnits.map((u) => u.label)).toEqual(["GAMMA, C."]);
  });
});
