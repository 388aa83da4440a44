// Document panel model: what the hypertext side shows for a selected unit.
// Co-units are clickable and re-center the selection.

import { UnitDocumentsResponse, UnitRef } from "./types.js";

export interface PanelEntry {
  docId: string;
  title: string;
  year: number | null;
  coUnits: UnitRef[];
}

export interface PanelModel {
  unit: string;
  label: string;
  kind: string;
  entries: PanelEntry[];
}

export function buildPanel(response: UnitDocumentsResponse): PanelModel {
  return {
    unit: response.unit,
    label: response.label,
    kind: response.kind,
    entries: response.documents.map((doc) => ({
      docId: doc.id,
      title: doc.title ?? doc.id,
      year: doc.year,
      coUnits: doc.units.filter((u) => u.id !== response.unit),
    })),
  };
}
