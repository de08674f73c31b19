// Control panel: algorithm picker, lambda slider with default/best buttons,
// preset loader, region toggle. All changes route through the store; the
// slider position itself is synced back from store state so every path
// (drag, buttons, programmatic) agrees.

import { ApiClient } from "./api.js";
import type { Store } from "./state.js";
import {
  ALGORITHM_KINDS,
  ALGORITHM_LABELS,
  LAMBDA_BEST,
  LAMBDA_DEFAULT,
  LAMBDA_MAX,
  LAMBDA_MIN,
  type AlgorithmKind,
} from "./transforms.js";

export const PRESETS = ["few-few", "few-many", "many-few", "many-many"];

export interface Controls {
  root: HTMLElement;
  algorithmSelect: HTMLSelectElement;
  lambdaSlider: HTMLInputElement;
  lambdaValue: HTMLElement;
  lambdaDefaultButton: HTMLButtonElement;
  lambdaBestButton: HTMLButtonElement;
  presetSelect: HTMLSelectElement;
  seedInput: HTMLInputElement;
  loadButton: HTMLButtonElement;
  regionSelect: HTMLSelectElement;
  loadPreset: (name: string, seed?: number) => Promise<void>;
}

function el<K extends keyof HTMLElementTagNameMap>(
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

export function createControls(
  doc: Document,
  store: Store,
  api: ApiClient,
  onError: (message: string) => void,
): Controls {
  const root = el(doc, "div", { class: "controls" });

  // constellation row
  const presetSelect = el(doc, "select", { id: "preset-select" });
  for (const name of PRESETS) presetSelect.append(el(doc, "option", { value: name }, name));
  const seedInput = el(doc, "input", {
    id: "seed-input",
    type: "number",
    placeholder: "seed (optional)",
  });
  const loadButton = el(doc, "button", { id: "load-btn" }, "Load");
  const row1 = el(doc, "div", { class: "control-row" });
  row1.append(el(doc, "label", {}, "Constellation"), presetSelect, seedInput, loadButton);

  // algorithm row
  const algorithmSelect = el(doc, "select", { id: "algorithm-select" });
  for (const kind of ALGORITHM_KINDS) {
    algorithmSelect.append(el(doc, "option", { value: kind }, ALGORITHM_LABELS[kind]));
  }
  const regionSelect = el(doc, "select", { id: "region-select" });
  regionSelect.append(el(doc, "option", { value: "local" }, "local ±10"));
  regionSelect.append(el(doc, "option", { value: "global" }, "global ±100"));
  const row2 = el(doc, "div", { class: "control-row" });
  row2.append(
    el(doc, "label", {}, "Algorithm"),
    algorithmSelect,
    el(doc, "label", {}, "Region"),
    regionSelect,
  );

  // lambda row
  const lambdaSlider = el(doc, "input", {
    id: "lambda-slider",
    type: "range",
    min: String(LAMBDA_MIN),
    max: String(LAMBDA_MAX),
    step: "0.005",
    value: String(LAMBDA_DEFAULT),
  });
  const lambdaValue = el(doc, "span", { id: "lambda-value" }, LAMBDA_DEFAULT.toFixed(3));
  const lambdaDefaultButton = el(doc, "button", { id: "lambda-default-btn" }, "λ default");
  const lambdaBestButton = el(doc, "button", { id: "lambda-best-btn" }, "λ best");
  const row3 = el(doc, "div", { class: "control-row" });
  row3.append(
    el(doc, "label", {}, "λ"),
    lambdaSlider,
    lambdaValue,
    lambdaDefaultButton,
    lambdaBestButton,
  );

  root.append(row1, row2, row3);

  algorithmSelect.addEventListener("change", () => {
    store.update({ algorithm: algorithmSelect.value as AlgorithmKind });
  });
  regionSelect.addEventListener("change", () => {
    store.update({ region: regionSelect.value as "local" | "global" });
  });
  lambdaSlider.addEventListener("input", () => {
    store.update({ lambda: Number(lambdaSlider.value) });
  });
  lambdaDefaultButton.addEventListener("click", () => {
    store.update({ lambda: LAMBDA_DEFAULT });
  });
  lambdaBestButton.addEventListener("click", () => {
    store.update({ lambda: LAMBDA_BEST[store.get().algorithm] });
  });

  const loadPreset = async (name: string, seed?: number) => {
    try {
      const doc_ = await api.createConstellation(
        seed === undefined
          ? { kind: "preset", name }
          : { kind: "preset", name, seed },
      );
      store.update({
        constellation: doc_,
        status: `loaded ${name}: ${doc_.m} sets, id ${doc_.id}`,
      });
    } catch (err) {
      onError(err instanceof Error ? err.message : String(err));
    }
  };

  loadButton.addEventListener("click", () => {
    const seedRaw = seedInput.value.trim();
    void loadPreset(presetSelect.value, seedRaw === "" ? undefined : Number(seedRaw));
  });

  // store is the source of truth; reflect it back into the widgets
  store.subscribe((state, changed) => {
    if (changed.has("lambda")) {
      lambdaSlider.value = String(state.lambda);
      lambdaValue.textContent = state.lambda.toFixed(3);
    }
    if (changed.has("algorithm")) algorithmSelect.value = state.algorithm;
    if (changed.has("region")) regionSelect.value = state.region;
  });

  return {
    root,
    algorithmSelect,
    lambdaSlider,
    lambdaValue,
    lambdaDefaultButton,
    lambdaBestButton,
    presetSelect,
    seedInput,
    loadButton,
    regionSelect,
    loadPreset,
  };
}
