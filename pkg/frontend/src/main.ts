/**
 * Application controller: wires the selection view, the model view, and the
 * API client together. Control changes re-query /attributes (debounced for
 * slider drags, latest response wins); applying a choice posts /enhance and
 * re-renders the model.
 */

import { ApiClient, type DepModelDoc, type SelectionDoc } from "./api.js";
import {
  debounce,
  initialState,
  LatestOnly,
  reconcileChosen,
  scopeParameter,
  setCvRange,
  SLIDER_DEBOUNCE_MS,
  toAttributeQuery,
  type Scope,
} from "./state.js";
import { renderError, renderSelectionView, type SelectionHandlers } from "./views/selection.js";
import { renderModelView } from "./views/model.js";

export class App {
  state = initialState();
  activities: string[] = [];
  lastSelection: SelectionDoc | null = null;
  private readonly attributeLookups = new LatestOnly();

  constructor(
    private readonly api: ApiClient,
    private readonly selectionEl: HTMLElement,
    private readonly modelEl: HTMLElement,
  ) {}

  private readonly refreshSoon = debounce(() => void this.refreshAttributes(), SLIDER_DEBOUNCE_MS);

  async open(logId: string): Promise<void> {
    this.state = { ...initialState(), logId };
    const model = await this.api.getModel(logId);
    this.activities = model.activities.map((a) => a.name);
    renderModelView(this.modelEl, model);
    await this.refreshAttributes();
  }

  private handlers(): SelectionHandlers {
    return {
      onActivity: (activity) => {
        this.state = { ...this.state, selectedActivity: activity };
        void this.refreshAttributes();
      },
      onCharacteristic: (filter) => {
        this.state = { ...this.state, characteristicFilter: filter };
        void this.refreshAttributes();
      },
      onType: (filter) => {
        this.state = { ...this.state, typeFilter: filter };
        void this.refreshAttributes();
      },
      onCvRange: (low, high) => {
        this.state = setCvRange(this.state, low, high);
        this.refreshSoon();
      },
      onChoose: (attribute) => {
        const doc = this.lastSelection;
        if (!doc) return;
        const fn = this.state.chosen?.fn ?? "mean";
        const scope = this.state.chosen?.scope ?? "all";
        this.state = { ...this.state, chosen: { attribute, fn, scope } };
        this.render();
      },
      onFn: (fn) => {
        if (this.state.chosen) {
          this.state = { ...this.state, chosen: { ...this.state.chosen, fn } };
        }
      },
      onScope: (scope: Scope) => {
        if (this.state.chosen) {
          this.state = { ...this.state, chosen: { ...this.state.chosen, scope } };
          void this.applyEnhance();
        }
      },
      onApply: () => void this.applyEnhance(),
    };
  }

  async refreshAttributes(): Promise<void> {
    if (this.state.logId === null) return;
    const logId = this.state.logId;
    try {
      const doc = await this.attributeLookups.run(() =>
        this.api.getAttributes(logId, toAttributeQuery(this.state)),
      );
      if (doc === undefined) return; // superseded by a newer query
      this.lastSelection = doc;
      this.state = reconcileChosen(this.state, doc);
      this.render();
      renderError(this.selectionEl, null);
    } catch (error) {
      this.render();
      renderError(this.selectionEl, String(error));
    }
  }

  async applyEnhance(): Promise<DepModelDoc | undefined> {
    const { logId, chosen } = this.state;
    if (logId === null || chosen === null) return undefined;
    try {
      const dep = await this.api.enhance(logId, {
        attribute: chosen.attribute,
        fn: chosen.fn,
        scope: scopeParameter(this.state),
      });
      renderModelView(this.modelEl, dep);
      renderError(this.selectionEl, null);
      return dep;
    } catch (error) {
      renderError(this.selectionEl, String(error));
      return undefined;
    }
  }

  render(): void {
    renderSelectionView(
      this.selectionEl,
      this.state,
      this.activities,
      this.lastSelection,
      this.handlers(),
    );
  }
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("api") ?? "http://127.0.0.1:8000";
  const api = new ApiClient(base);
  const selectionEl = document.getElementById("selection-view")!;
  const modelEl = document.getElementById("model-view")!;
  const app = new App(api, selectionEl, modelEl);

  const picker = document.getElementById("log-picker") as HTMLSelectElement;
  const upload = document.getElementById("log-upload") as HTMLInputElement;

  async function refreshLogList(): Promise<void> {
    const logs = await api.listLogs();
    picker.replaceChildren();
    for (const id of logs) {
      const option = document.createElement("option");
      option.value = id;
      option.textContent = id;
      picker.appendChild(option);
    }
  }

  picker.addEventListener("change", () => void app.open(picker.value));
  upload.addEventListener("change", async () => {
    const file = upload.files?.[0];
    if (!file) return;
    const { id } = await api.uploadLog(file);
    await refreshLogList();
    picker.value = id;
    await app.open(id);
  });

  await refreshLogList();
  if (picker.value) await app.open(picker.value);
}

if (typeof document !== "undefined" && document.getElementById("selection-view")) {
  void boot();
}
