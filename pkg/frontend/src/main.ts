// App assembly: two tabs (explorer, cartographer) over one store and one
// API client. Exported as a function so tests can boot the full app against
// any document and service address.

import { ApiClient } from "./api.js";
import { CartoView } from "./carto_view.js";
import { createControls, type Controls } from "./controls.js";
import { OrbitView } from "./orbit_view.js";
import { Store } from "./state.js";

export interface App {
  store: Store;
  api: ApiClient;
  controls: Controls;
  orbitView: OrbitView;
  cartoView: CartoView;
  planeCanvas: HTMLCanvasElement;
  chartCanvas: HTMLCanvasElement;
  cartoCanvas: HTMLCanvasElement;
  budgetInput: HTMLInputElement;
  chunkInput: HTMLInputElement;
  runMapButton: HTMLButtonElement;
  cancelMapButton: HTMLButtonElement;
  statusEl: HTMLElement;
  showTab: (name: "explorer" | "carto") => void;
  showToast: (message: string) => void;
}

function make<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export function buildApp(
  doc: Document,
  mount: HTMLElement,
  baseUrl = "",
  api: ApiClient = new ApiClient(baseUrl),
): App {
  const store = new Store();

  const toast = make(doc, "div", { id: "toast", class: "toast", hidden: "" });
  let toastTimer: ReturnType<typeof setTimeout> | null = null;
  const showToast = (message: string) => {
    toast.textContent = message;
    toast.removeAttribute("hidden");
    if (toastTimer !== null) clearTimeout(toastTimer);
    toastTimer = setTimeout(() => toast.setAttribute("hidden", ""), 4000);
  };

  const controls = createControls(doc, store, api, showToast);

  // tab bar
  const tabExplorer = make(doc, "button", { id: "tab-explorer", class: "tab active" }, "Explorer");
  const tabCarto = make(doc, "button", { id: "tab-carto", class: "tab" }, "Cartographer");
  const tabBar = make(doc, "div", { class: "tab-bar" });
  tabBar.append(tabExplorer, tabCarto);

  // explorer panel
  const planeCanvas = make(doc, "canvas", { id: "plane-canvas", width: "480", height: "480" });
  const chartCanvas = make(doc, "canvas", { id: "chart-canvas", width: "480", height: "140" });
  const statusEl = make(doc, "div", { id: "status-line" }, "no constellation loaded");
  const explorerPanel = make(doc, "div", { id: "panel-explorer", class: "panel" });
  explorerPanel.append(
    make(doc, "p", { class: "hint" }, "Click the plane to start an orbit."),
    planeCanvas,
    make(doc, "p", { class: "hint" }, "d(y_k), log scale, floor 1e-8; dashed line is ε."),
    chartCanvas,
  );

  // cartographer panel
  const cartoCanvas = make(doc, "canvas", { id: "carto-canvas", width: "480", height: "480" });
  const budgetInput = make(doc, "input", { id: "budget-input", type: "number", value: "10000" });
  const chunkInput = make(doc, "input", { id: "chunk-input", type: "number", value: "500" });
  const runMapButton = make(doc, "button", { id: "run-map-btn" }, "Run map");
  const cancelMapButton = make(doc, "button", { id: "cancel-map-btn" }, "Cancel");
  const progressBar = make(doc, "progress", { id: "map-progress", max: "1", value: "0" });
  const progressText = make(doc, "span", { id: "map-progress-text" });
  const cartoPanel = make(doc, "div", { id: "panel-carto", class: "panel", hidden: "" });
  const cartoRow = make(doc, "div", { class: "control-row" });
  cartoRow.append(
    make(doc, "label", {}, "Budget"),
    budgetInput,
    make(doc, "label", {}, "Chunk"),
    chunkInput,
    runMapButton,
    cancelMapButton,
    progressBar,
    progressText,
  );
  cartoPanel.append(cartoRow, cartoCanvas);

  mount.append(controls.root, statusEl, tabBar, explorerPanel, cartoPanel, toast);

  const showTab = (name: "explorer" | "carto") => {
    const explorer = name === "explorer";
    if (explorer) {
      explorerPanel.removeAttribute("hidden");
      cartoPanel.setAttribute("hidden", "");
    } else {
      cartoPanel.removeAttribute("hidden");
      explorerPanel.setAttribute("hidden", "");
    }
    tabExplorer.classList.toggle("active", explorer);
    tabCarto.classList.toggle("active", !explorer);
  };
  tabExplorer.addEventListener("click", () => showTab("explorer"));
  tabCarto.addEventListener("click", () => showTab("carto"));

  const orbitView = new OrbitView(planeCanvas, chartCanvas, statusEl, store, api, showToast);
  const cartoView = new CartoView(cartoCanvas, progressBar, progressText, store, api, showToast);

  runMapButton.addEventListener("click", () => {
    const budget = Math.max(1, Number(budgetInput.value) || 1);
    const chunk = Math.max(1, Math.min(Number(chunkInput.value) || 500, budget));
    runMapButton.disabled = true;
    void cartoView.start(budget, chunk).then((run) => {
      if (run === null) {
        runMapButton.disabled = false;
        return;
      }
      void run.done.then(() => {
        runMapButton.disabled = false;
      });
    });
  });
  cancelMapButton.addEventListener("click", () => {
    void cartoView.cancelActive();
  });
  store.subscribe((state, changed) => {
    // knob changes drop the active job; let the user start a fresh one
    if (changed.has("mapJobId") && state.mapJobId === null) runMapButton.disabled = false;
  });

  orbitView.render();
  return {
    store,
    api,
    controls,
    orbitView,
    cartoView,
    planeCanvas,
    chartCanvas,
    cartoCanvas,
    budgetInput,
    chunkInput,
    runMapButton,
    cancelMapButton,
    statusEl,
    showTab,
    showToast,
  };
}

// browser bootstrap; absent under unit tests, which call buildApp themselves
const mountPoint = typeof document !== "undefined" ? document.getElementById("app") : null;
if (mountPoint) {
  const app = buildApp(document, mountPoint);
  void app.controls.loadPreset("few-few");
}
