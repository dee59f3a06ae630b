/**
 * Selection state and the pure update/query logic around it.
 *
 * Invariants kept here:
 * - the CV range is only part of an attributes query when the
 *   characteristic filter is "dynamic" (the backend rejects it otherwise);
 * - a chosen attribute must be a member of the currently filtered lists,
 *   so refreshing the lists can clear the choice.
 */

import type { AttributeQuery, SelectionDoc } from "./api.js";

export type CharacteristicFilter = "static" | "semi-dynamic" | "dynamic" | null;
export type TypeFilter = "quantitative" | "categorical" | null;
export type Scope = "selected" | "all";

export interface Chosen {
  attribute: string;
  fn: string;
  scope: Scope;
}

export interface SelectionState {
  logId: string | null;
  selectedActivity: string | null;
  characteristicFilter: CharacteristicFilter;
  typeFilter: TypeFilter;
  cvRange: [number, number];
  chosen: Chosen | null;
}

export const CV_FULL_RANGE: [number, number] = [0, 100];

export function initialState(): SelectionState {
  return {
    logId: null,
    selectedActivity: null,
    characteristicFilter: null,
    typeFilter: null,
    cvRange: [...CV_FULL_RANGE],
    chosen: null,
  };
}

export function cvSlidersEnabled(state: SelectionState): boolean {
  return state.characteristicFilter === "dynamic";
}

/** Build the /attributes query; CV bounds are dropped unless dynamic. */
export function toAttributeQuery(state: SelectionState): AttributeQuery {
  const query: AttributeQuery = {};
  if (state.selectedActivity !== null) query.activity = state.selectedActivity;
  if (state.characteristicFilter !== null) query.characteristic = state.characteristicFilter;
  if (state.typeFilter !== null) query.type = state.typeFilter;
  if (cvSlidersEnabled(state)) {
    const [low, high] = state.cvRange;
    query.cvMin = Math.min(low, high);
    query.cvMax = Math.max(low, high);
  }
  return query;
}

export function setCvRange(state: SelectionState, low: number, high: number): SelectionState {
  return { ...state, cvRange: [low, high] };
}

export function listedNames(doc: SelectionDoc): Set<string> {
  const names = new Set<string>();
  for (const entry of doc.quantitative) names.add(entry.name);
  for (const entry of doc.categorical) names.add(entry.name);
  return names;
}

/** Drop the chosen attribute when it left the filtered lists. */
export function reconcileChosen(state: SelectionState, doc: SelectionDoc): SelectionState {
  if (state.chosen && !listedNames(doc).has(state.chosen.attribute)) {
    return { ...state, chosen: null };
  }
  return state;
}

export function chooseAttribute(
  state: SelectionState,
  doc: SelectionDoc,
  attribute: string,
  fn: string,
  scope: Scope,
): SelectionState {
  if (!listedNames(doc).has(attribute)) {
    throw new Error(`attribute ${attribute} is not in the filtered lists`);
  }
  return { ...state, chosen: { attribute, fn, scope } };
}

export function scopeParameter(state: SelectionState): string {
  if (!state.chosen) throw new Error("nothing chosen");
  if (state.chosen.scope === "selected") {
    if (state.selectedActivity === null) {
      throw new Error("scope 'selected' needs a selected activity");
    }
    return `activity:${state.selectedActivity}`;
  }
  return "all";
}

/**
 * Serialize concurrent async lookups: only the latest call's result is
 * delivered; completions of superseded calls resolve to undefined.
 */
export class LatestOnly {
  private seq = 0;

  async run<T>(task: () => Promise<T>): Promise<T | undefined> {
    const ticket = ++this.seq;
    const result = await task();
    return ticket === this.seq ? result : undefined;
  }
}

/** Trailing-edge debounce; burst of calls within `ms` collapses to one. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), ms);
  };
}

export const SLIDER_DEBOUNCE_MS = 150;
