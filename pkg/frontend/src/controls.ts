// Threshold and level controls turn pending values into a rebuild request.

import { BuildRequest, GraphView } from "./types.js";
import { ViewState } from "./state.js";

export function rebuildRequest(view: GraphView, state: ViewState): BuildRequest {
  return {
    mode: view.mode,
    threshold: state.pendingThreshold,
    levels: state.pendingLevels,
  };
}
