// Bootstrap and wiring: fetch artifacts, hold the ViewState, re-derive and
// redraw on every change. The previous scene stays interactive while a
// rebuild is in flight; failures surface in a banner and revert controls.

import { ApiClient, ApiError } from "./api.js";
import { rebuildRequest } from "./controls.js";
import { DEFAULT_LAYOUT, layoutScene } from "./layout.js";
import { buildPanel, PanelModel } from "./panel.js";
import { renderScene } from "./render.js";
import { deriveScene, SceneNode } from "./scene.js";
import { Action, initialState, reduce, ViewState } from "./state.js";
import { ClusterDetail, GraphView, isCluster } from "./types.js";

interface AppElements {
  svg: SVGSVGElement;
  banner: HTMLElement;
  panel: HTMLElement;
  threshold: HTMLInputElement;
  thresholdValue: HTMLElement;
  level: HTMLSelectElement;
  rebuild: HTMLButtonElement;
  pathFrom: HTMLInputElement;
  pathTo: HTMLInputElement;
  pathButton: HTMLButtonElement;
  status: HTMLElement;
}

class Explorer {
  private view: GraphView;
  private state: ViewState;
  private details: Record<string, ClusterDetail> = {};

  constructor(
    private api: ApiClient,
    view: GraphView,
    private elements: AppElements,
  ) {
    this.view = view;
    this.state = initialState(view);
    this.wireControls();
    this.syncControls();
    this.draw();
  }

  private dispatch(action: Action): void {
    this.state = reduce(this.view, this.state, action);
    this.draw();
  }

  private banner(message: string | null): void {
    this.elements.banner.textContent = message ?? "";
    this.elements.banner.style.display = message === null ? "none" : "block";
  }

  private draw(): void {
    const scene = deriveScene(this.view, this.details, this.state);
    const positions = layoutScene(scene, {
      ...DEFAULT_LAYOUT,
      width: this.elements.svg.clientWidth || DEFAULT_LAYOUT.width,
      height: this.elements.svg.clientHeight || DEFAULT_LAYOUT.height,
    });
    renderScene(this.elements.svg, scene, positions, {
      onNodeClick: (node) => void this.select(node),
      onNodeDoubleClick: (node) => void this.toggle(node),
      onHullDoubleClick: (cluster) => this.dispatch({ type: "fold", cluster }),
    });
    this.elements.status.textContent =
      `level ${this.state.level}/${this.view.level_count}` +
      ` | ${scene.nodes.length} nodes, ${scene.edges.length} edges` +
      (this.view.capped ? " | capped" : "");
  }

  private async toggle(node: SceneNode): Promise<void> {
    if (node.kind !== "cluster") return;
    if (this.state.unfolded.includes(node.id)) {
      this.dispatch({ type: "fold", cluster: node.id });
      return;
    }
    try {
      await this.ensureDetail(node.id);
      this.dispatch({ type: "unfold", cluster: node.id });
    } catch (error) {
      this.banner(`could not unfold ${node.id}: ${(error as Error).message}`);
    }
  }

  private async ensureDetail(clusterId: string): Promise<void> {
    if (clusterId in this.details || this.state.graphId === null) return;
    this.details[clusterId] = await this.api.getCluster(this.state.graphId, clusterId);
  }

  private async select(node: SceneNode): Promise<void> {
    this.dispatch({ type: "select", node: node.id });
    if (node.kind === "unit" && this.view.corpus_id !== null) {
      try {
        const docs = await this.api.getUnitDocuments(this.view.corpus_id, node.id);
        this.renderPanel(buildPanel(docs));
      } catch (error) {
        this.renderPanelError(node.id, (error as Error).message);
      }
    } else {
      const cluster = this.view.nodes.find((n) => n.id === node.id);
      if (cluster !== undefined && isCluster(cluster)) {
        this.elements.panel.innerHTML = "";
        const heading = document.createElement("h3");
        heading.textContent = `${cluster.label} (${cluster.size} members)`;
        this.elements.panel.appendChild(heading);
        const hint = document.createElement("p");
        hint.textContent = "Double-click to unfold and inspect members.";
        this.elements.panel.appendChild(hint);
      }
    }
  }

  private renderPanelError(unitId: string, message: string): void {
    this.elements.panel.innerHTML = "";
    const p = document.createElement("p");
    p.textContent = `failed to load documents: ${message}`;
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.addEventListener("click", () => {
      const node = deriveScene(this.view, this.details, this.state).nodes.find(
        (n) => n.id === unitId,
      );
      if (node !== undefined) void this.select(node);
    });
    this.elements.panel.append(p, retry);
  }

  private renderPanel(model: PanelModel): void {
    const panel = this.elements.panel;
    panel.innerHTML = "";
    const heading = document.createElement("h3");
    heading.textContent = `${model.label} [${model.kind}]`;
    panel.appendChild(heading);
    const count = document.createElement("p");
    count.textContent = `${model.entries.length} document(s)`;
    panel.appendChild(count);
    for (const entry of model.entries) {
      const item = document.createElement("div");
      item.className = "doc-entry";
      const title = document.createElement("strong");
      title.textContent = entry.year === null ? entry.title : `${entry.title} (${entry.year})`;
      item.appendChild(title);
      const list = document.createElement("div");
      for (const unit of entry.coUnits) {
        const link = document.createElement("a");
        link.href = "#";
        link.textContent = unit.label;
        link.addEventListener("click", (event) => {
          event.preventDefault();
          void this.recenter(unit.id);
        });
        list.appendChild(link);
        list.appendChild(document.createTextNode(" "));
      }
      item.appendChild(list);
      panel.appendChild(item);
    }
  }

  private async recenter(unitId: string): Promise<void> {
    // make the unit visible by unfolding its cluster, then select it
    const unit = this.view.nodes.find((n) => n.id === unitId);
    if (unit === undefined || isCluster(unit)) return;
    const cluster = unit.membership[String(this.state.level)];
    if (cluster !== undefined && !this.state.unfolded.includes(cluster)) {
      try {
        await this.ensureDetail(cluster);
        this.dispatch({ type: "unfold", cluster });
      } catch {
        // cluster stays folded; select its node instead
        this.dispatch({ type: "select", node: cluster });
        return;
      }
    }
    const scene = deriveScene(this.view, this.details, this.state);
    const node = scene.nodes.find((n) => n.id === unitId);
    if (node !== undefined) void this.select(node);
  }

  private wireControls(): void {
    const { threshold, thresholdValue, level, rebuild, pathFrom, pathTo, pathButton } =
      this.elements;
    threshold.addEventListener("input", () => {
      thresholdValue.textContent = Number(threshold.value).toFixed(2);
      this.dispatch({ type: "pendingThreshold", value: Number(threshold.value) });
    });
    level.addEventListener("change", () => {
      this.dispatch({ type: "setLevel", level: Number(level.value) });
    });
    rebuild.addEventListener("click", () => void this.rebuild());
    pathButton.addEventListener("click", () => void this.highlightPath(pathFrom.value, pathTo.value));
  }

  private syncControls(): void {
    const { threshold, thresholdValue, level } = this.elements;
    threshold.value = String(this.view.threshold);
    thresholdValue.textContent = this.view.threshold.toFixed(2);
    level.innerHTML = "";
    for (let l = 1; l <= this.view.level_count; l++) {
      const option = document.createElement("option");
      option.value = String(l);
      option.textContent = `level ${l}`;
      if (l === this.state.level) option.selected = true;
      level.appendChild(option);
    }
  }

  private async rebuild(): Promise<void> {
    if (this.view.corpus_id === null) return;
    const previous = this.view.threshold;
    try {
      this.banner(null);
      const built = await this.api.buildGraph(
        this.view.corpus_id,
        rebuildRequest(this.view, this.state),
      );
      const view = await this.api.getView(built.graph_id);
      this.view = view;
      this.details = {};
      this.state = reduce(view, this.state, { type: "swapGraph", view });
      this.syncControls();
      this.banner(null);
      this.draw();
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      this.banner(`rebuild failed: ${(error as Error).message}`);
      this.dispatch({ type: "pendingThreshold", value: previous });
      this.elements.threshold.value = String(previous);
      this.elements.thresholdValue.textContent = previous.toFixed(2);
    }
  }

  private async highlightPath(from: string, to: string): Promise<void> {
    if (this.state.graphId === null || !from || !to) return;
    try {
      const response = await this.api.getPath(this.state.graphId, from.trim(), to.trim());
      if (!response.found || response.nodes === null) {
        this.banner("no path: the units are disconnected");
        this.dispatch({ type: "setPath", nodes: null });
        return;
      }
      this.banner(null);
      this.dispatch({ type: "setPath", nodes: response.nodes });
    } catch (error) {
      this.banner(
        error instanceof ApiError && error.code === "unknown_unit"
          ? `unknown unit: ${error.message}`
          : `path lookup failed: ${(error as Error).message}`,
      );
    }
  }
}

function requireElement<T extends Element>(id: string): T {
  const found = document.getElementById(id);
  if (found === null) throw new Error(`missing element #${id}`);
  return found as unknown as T;
}

export async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8040");
  const graphId = params.get("graph");
  const banner = requireElement<HTMLElement>("banner");
  if (graphId === null) {
    banner.textContent =
      "no graph selected: open ?graph=<id>[&api=<base>] after building one " +
      "(POST /corpora, then POST /corpora/{id}/graphs)";
    banner.style.display = "block";
    return;
  }
  try {
    const view = await api.getView(graphId);
    new Explorer(api, view, {
      svg: requireElement<SVGSVGElement>("map"),
      banner,
      panel: requireElement<HTMLElement>("panel"),
      threshold: requireElement<HTMLInputElement>("threshold"),
      thresholdValue: requireElement<HTMLElement>("threshold-value"),
      level: requireElement<HTMLSelectElement>("level"),
      rebuild: requireElement<HTMLButtonElement>("rebuild"),
      pathFrom: requireElement<HTMLInputElement>("path-from"),
      pathTo: requireElement<HTMLInputElement>("path-to"),
      pathButton: requireElement<HTMLButtonElement>("path-button"),
      status: requireElement<HTMLElement>("status"),
    });
  } catch (error) {
    banner.textContent = `failed to load graph ${graphId}: ${(error as Error).message}`;
    banner.style.display = "block";
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  void boot();
}
