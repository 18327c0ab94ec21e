/** Interaction state. The shared Selection lives here and nowhere else:
 * every view renders from this store, so a selection made anywhere is
 * the selection everywhere.
 */

import type { AddCompoundResponse } from "./types";

export interface SelectionState {
  ids: ReadonlySet<string>;
  provenance: string;
  name: string;
}

export interface AddedCompound {
  id: string;
  smiles: string;
  coords: Record<string, [number, number] | null>;
  descriptors: Record<string, number>;
}

export interface SpatialOptions {
  showHydrogens: boolean;
  atomScale: number;
  bondScale: number;
  globalOpacity: number;
  inverted: boolean;
  commonOnly: boolean;
}

export interface HoverTarget {
  kind: "hex" | "compound";
  key: string;
}

export interface ViewState {
  dataset: string;
  representation: string;
  compareRepresentation: string;
  radius: number;
  colorFeature: string | null;
  selection: SelectionState;
  hover: HoverTarget | null;
  added: AddedCompound[];
  spatial: SpatialOptions;
  comparisonOpen: boolean;
}

export const EMPTY_SELECTION: SelectionState = {
  ids: new Set<string>(),
  provenance: "none",
  name: "current",
};

export function initialState(dataset: string, representation: string, radius: number): ViewState {
  return {
    dataset,
    representation,
    compareRepresentation: representation,
    radius,
    colorFeature: null,
    selection: EMPTY_SELECTION,
    hover: null,
    added: [],
    spatial: {
      showHydrogens: false,
      atomScale: 1,
      bondScale: 1,
      globalOpacity: 1,
      inverted: false,
      commonOnly: false,
    },
    comparisonOpen: true,
  };
}

export type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState;

  private listeners: Listener[] = [];

  constructor(state: ViewState) {
    this.state = state;
  }

  getState(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private commit(next: ViewState): void {
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  setSelection(ids: Iterable<string>, provenance: string): void {
    this.commit({
      ...this.state,
      selection: { ids: new Set(ids), provenance, name: "current" },
    });
  }

  clearSelection(): void {
    this.commit({ ...this.state, selection: EMPTY_SELECTION });
  }

  /** Radius changes rebin the maps but must never touch the selection. */
  setRadius(radius: number): void {
    this.commit({ ...this.state, radius });
  }

  setRepresentation(tag: string): void {
    this.commit({ ...this.state, representation: tag });
  }

  setCompareRepresentation(tag: string): void {
    this.commit({ ...this.state, compareRepresentation: tag });
  }

  setColorFeature(feature: string | null): void {
    this.commit({ ...this.state, colorFeature: feature });
  }

  setHover(target: HoverTarget | null): void {
    this.commit({ ...this.state, hover: target });
  }

  setComparisonOpen(open: boolean): void {
    this.commit({ ...this.state, comparisonOpen: open });
  }

  setSpatial(options: Partial<SpatialOptions>): void {
    this.commit({ ...this.state, spatial: { ...this.state.spatial, ...options } });
  }

  addCompound(response: AddCompoundResponse): void {
    const added: AddedCompound = {
      id: response.id,
      smiles: response.smiles,
      coords: response.coords,
      descriptors: response.descriptors,
    };
    this.commit({ ...this.state, added: [...this.state.added, added] });
  }
}

/** Selection helpers shared by the view interaction handlers. */

export function toggleId(
  current: ReadonlySet<string>,
  id: string,
  additive: boolean,
): Set<string> {
  const next = additive ? new Set(current) : new Set<string>();
  if (additive && next.has(id)) next.delete(id);
  else next.add(id);
  return next;
}

export function mergeIds(
  current: ReadonlySet<string>,
  ids: Iterable<string>,
  additive: boolean,
): Set<string> {
  const next = additive ? new Set(current) : new Set<string>();
  for (const id of ids) next.add(id);
  return next;
}
