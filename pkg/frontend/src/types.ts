/** Payload shapes of the /v1 JSON service, mirrored field for field. */

export interface DatasetInfo {
  name: string;
  compounds: number;
  representations: string[];
  projections: string[];
  projectors: string[];
  targets: string[];
  conformers: number;
  artifact_version: number;
}

export interface TrustPayload {
  pearson: number[];
  kendall: number[];
  degenerate: boolean[];
}

export interface ProjectionPayload {
  dataset: string;
  representation: string;
  source: string;
  ids: string[];
  coords: [number, number][];
  trust: TrustPayload | null;
  artifact_version: number;
}

export interface BinPayload {
  q: number;
  r: number;
  center: [number, number];
  member_ids: string[];
  count: number;
  aggregate: number | string | null;
  mean_trust: number | null;
  opacity: number;
}

export interface BinsResponse {
  dataset: string;
  representation: string;
  radius: number;
  feature: string | null;
  bins: BinPayload[];
  artifact_version: number;
}

export interface InnerHexPayload {
  parent: [number, number];
  center: [number, number];
  size: number;
  member_ids: string[];
}

export interface DifferenceResponse {
  dataset: string;
  reference: string;
  compared: string;
  radius: number;
  outer_bins: BinPayload[];
  inner_hexes: InnerHexPayload[];
  artifact_version: number;
}

export type TableValue = number | string | null;

export interface TableRow {
  id: string;
  [feature: string]: TableValue;
}

export interface TableResponse {
  dataset: string;
  total: number;
  page: number;
  page_size: number;
  rows: TableRow[];
  artifact_version: number;
}

export interface Quartiles {
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
}

export interface HexGroup {
  hex: [number, number];
  center: [number, number];
  member_ids: string[];
  count: number;
  feature: string;
  quartiles: Quartiles | null;
}

export interface GroupedTableResponse {
  dataset: string;
  group_by: "hexagon";
  representation: string;
  radius: number;
  groups: HexGroup[];
  artifact_version: number;
}

export interface AlignTemplate {
  elements: string[];
  bonds: [number, number, string][];
  exact: boolean;
  rings_split: boolean;
}

export interface AlignedCompound {
  id: string;
  elements: string[];
  bonds: [number, number, string][];
  rotation: number[][];
  translation: number[];
  rmsd: number;
  positions: [number, number, number][];
  core_atoms: number[];
  occurrence: number[];
  atom_opacity: number[];
  bond_opacity: number[];
}

export interface AlignResponse {
  dataset: string;
  reference_id: string;
  template: AlignTemplate;
  compounds: AlignedCompound[];
}

export interface SelectionPayload {
  name: string;
  ids: string[];
  provenance: string;
}

export interface SessionDocument {
  session_id: string;
  version: number;
  dataset: string;
  selections: Record<string, { ids: string[]; provenance: string }>;
  view: Record<string, unknown>;
  added: { id: string; smiles: string; coords: Record<string, [number, number]> }[];
}

export interface AddCompoundResponse {
  id: string;
  smiles: string;
  highlight: boolean;
  coords: Record<string, [number, number] | null>;
  unavailable: string[];
  descriptors: Record<string, number>;
  fingerprints: Record<string, number[]>;
}
