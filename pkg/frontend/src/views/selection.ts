/**
 * Attribute selection view: activity picker, characteristic and type
 * filters, two CV sliders (enabled for dynamic only), and the two
 * attribute lists split by type. Every control change is reported through
 * the handler; the caller re-queries the service and re-renders.
 */

import type { AttributeEntry, SelectionDoc } from "../api.js";
import { formatDegVar } from "../format.js";
import type { CharacteristicFilter, Scope, SelectionState, TypeFilter } from "../state.js";
import { cvSlidersEnabled } from "../state.js";

export interface SelectionHandlers {
  onActivity(activity: string | null): void;
  onCharacteristic(filter: CharacteristicFilter): void;
  onType(filter: TypeFilter): void;
  onCvRange(low: number, high: number): void;
  onChoose(attribute: string): void;
  onFn(fn: string): void;
  onScope(scope: Scope): void;
  onApply(): void;
}

export const AGGREGATIONS = ["mean", "median", "min", "max", "stddev", "count", "mode", "topk"];

function option(value: string, label: string, selected: boolean): HTMLOptionElement {
  const el = document.createElement("option");
  el.value = value;
  el.textContent = label;
  el.selected = selected;
  return el;
}

function select(
  id: string,
  entries: [string, string][],
  current: string,
  onChange: (value: string) => void,
): HTMLSelectElement {
  const el = document.createElement("select");
  el.id = id;
  for (const [value, label] of entries) {
    el.appendChild(option(value, label, value === current));
  }
  el.addEventListener("change", () => onChange(el.value));
  return el;
}

function labeled(text: string, control: HTMLElement): HTMLLabelElement {
  const label = document.createElement("label");
  label.textContent = text;
  label.appendChild(control);
  return label;
}

function slider(
  id: string,
  value: number,
  enabled: boolean,
  onInput: (value: number) => void,
): HTMLInputElement {
  const el = document.createElement("input");
  el.type = "range";
  el.id = id;
  el.min = "0";
  el.max = "100";
  el.step = "0.1";
  el.value = String(value);
  el.disabled = !enabled;
  el.addEventListener("input", () => onInput(Number(el.value)));
  return el;
}

function attributeList(
  id: string,
  title: string,
  entries: AttributeEntry[],
  total: number,
  chosen: string | null,
  onChoose: (name: string) => void,
): HTMLElement {
  const box = document.createElement("section");
  box.className = "attr-list";
  box.id = id;
  const heading = document.createElement("h3");
  heading.textContent = `${title} (${entries.length} shown of ${total})`;
  box.appendChild(heading);
  const list = document.createElement("ul");
  if (entries.length === 0) {
    const empty = document.createElement("li");
    empty.className = "empty";
    empty.textContent = "no attributes match";
    list.appendChild(empty);
  }
  for (const entry of entries) {
    const item = document.createElement("li");
    item.dataset.name = entry.name;
    item.className = entry.name === chosen ? "chosen" : "";
    const name = document.createElement("span");
    name.className = "attr-name";
    name.textContent = entry.name;
    const degVar = document.createElement("span");
    degVar.className = "deg-var";
    degVar.textContent = formatDegVar(entry.degVar);
    if (entry.degVar !== null) degVar.dataset.exact = String(entry.degVar);
    item.append(name, degVar);
    item.addEventListener("click", () => onChoose(entry.name));
    list.appendChild(item);
  }
  box.appendChild(list);
  return box;
}

export function renderSelectionView(
  container: HTMLElement,
  state: SelectionState,
  activities: string[],
  doc: SelectionDoc | null,
  handlers: SelectionHandlers,
): void {
  container.replaceChildren();

  const controls = document.createElement("div");
  controls.className = "controls";

  controls.appendChild(
    labeled(
      "activity",
      select(
        "activity-select",
        [["", "(all)"], ...activities.map((a): [string, string] => [a, a])],
        state.selectedActivity ?? "",
        (value) => handlers.onActivity(value === "" ? null : value),
      ),
    ),
  );
  controls.appendChild(
    labeled(
      "characteristic",
      select(
        "characteristic-select",
        [
          ["", "(any)"],
          ["static", "static"],
          ["semi-dynamic", "semi-dynamic"],
          ["dynamic", "dynamic"],
        ],
        state.characteristicFilter ?? "",
        (value) => handlers.onCharacteristic((value || null) as CharacteristicFilter),
      ),
    ),
  );
  controls.appendChild(
    labeled(
      "type",
      select(
        "type-select",
        [
          ["", "(both)"],
          ["quantitative", "quantitative"],
          ["categorical", "categorical"],
        ],
        state.typeFilter ?? "",
        (value) => handlers.onType((value || null) as TypeFilter),
      ),
    ),
  );

  const enabled = cvSlidersEnabled(state);
  const [low, high] = state.cvRange;
  const sliders = document.createElement("div");
  sliders.className = "cv-sliders";
  sliders.appendChild(
    labeled(`CV min ${low.toFixed(1)}%`, slider("cv-min", low, enabled, (v) => handlers.onCvRange(v, state.cvRange[1]))),
  );
  sliders.appendChild(
    labeled(`CV max ${high.toFixed(1)}%`, slider("cv-max", high, enabled, (v) => handlers.onCvRange(state.cvRange[0], v))),
  );
  controls.appendChild(sliders);

  const fnSelect = select(
    "fn-select",
    AGGREGATIONS.map((fn): [string, string] => [fn, fn]),
    state.chosen?.fn ?? "mean",
    (value) => handlers.onFn(value),
  );
  controls.appendChild(labeled("aggregation", fnSelect));

  const scope = document.createElement("div");
  scope.className = "scope-toggle";
  for (const [value, label] of [
    ["selected", "selected activity"],
    ["all", "all activities"],
  ] as [Scope, string][]) {
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = "scope";
    radio.id = `scope-${value}`;
    radio.value = value;
    radio.checked = (state.chosen?.scope ?? "all") === value;
    radio.addEventListener("change", () => handlers.onScope(value));
    const wrap = document.createElement("label");
    wrap.append(radio, label);
    scope.appendChild(wrap);
  }
  controls.appendChild(scope);

  const apply = document.createElement("button");
  apply.id = "apply-enhance";
  apply.textContent = "show in model";
  apply.disabled = state.chosen === null;
  apply.addEventListener("click", () => handlers.onApply());
  controls.appendChild(apply);

  container.appendChild(controls);

  if (doc !== null) {
    const lists = document.createElement("div");
    lists.className = "lists";
    lists.appendChild(
      attributeList(
        "list-quantitative",
        "quantitative",
        doc.quantitative,
        doc.totals.quantitative,
        state.chosen?.attribute ?? null,
        handlers.onChoose,
      ),
    );
    lists.appendChild(
      attributeList(
        "list-categorical",
        "categorical",
        doc.categorical,
        doc.totals.categorical,
        state.chosen?.attribute ?? null,
        handlers.onChoose,
      ),
    );
    container.appendChild(lists);
  }
}

/** Inline, state-preserving error banner. */
export function renderError(container: HTMLElement, message: string | null): void {
  const existing = container.querySelector(".error");
  if (existing) existing.remove();
  if (message === null) return;
  const banner = document.createElement("div");
  banner.className = "error";
  banner.textContent = message;
  container.prepend(banner);
}
