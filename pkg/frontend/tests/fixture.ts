/** In-memory /v1 service double. Layouts are authored on a radius-2
 * hex grid with centers computed locally, so the stub never leans on
 * the client geometry it is used to test.
 */

import type {
  AlignResponse,
  BinPayload,
  DatasetInfo,
  ProjectionPayload,
  TableRow,
} from "../src/types";
import type { FetchLike } from "../src/api";

const SQRT3 = Math.sqrt(3);
const RADIUS = 2;

export function center(q: number, r: number, radius = RADIUS): [number, number] {
  return [radius * SQRT3 * (q + r / 2), radius * 1.5 * r];
}

export const DATASET = "demo";
export const IDS = ["c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"];

/** logp values straddle the 6.75 drug-design cut: strict > keeps 4. */
export const FEATURES: Record<string, { logp: number; molecular_weight: number; activity: string }> = {
  c1: { logp: 5.0, molecular_weight: 320.4, activity: "Active" },
  c2: { logp: 7.0, molecular_weight: 342.5, activity: "Active" },
  c3: { logp: 6.75, molecular_weight: 310.1, activity: "Moderately Active" },
  c4: { logp: 9.1, molecular_weight: 405.9, activity: "Inactive" },
  c5: { logp: 1.2, molecular_weight: 150.2, activity: "Unlabeled" },
  c6: { logp: 6.8, molecular_weight: 366.0, activity: "Active" },
  c7: { logp: 3.3, molecular_weight: 201.7, activity: "Moderately Active" },
  c8: { logp: 7.5, molecular_weight: 388.8, activity: "Inactive" },
};

export const LOGP_ORACLE = ["c2", "c4", "c6", "c8"];

type Cell = [number, number];

const ECFP_CELLS: Record<string, Cell> = {
  c1: [0, 0],
  c2: [0, 0],
  c3: [1, 0],
  c4: [1, 0],
  c5: [0, 1],
  c6: [0, 1],
  c7: [2, 0],
  c8: [2, 0],
};

const PATH_CELLS: Record<string, Cell> = {
  c1: [0, 0],
  c5: [0, 0],
  c2: [1, 0],
  c6: [1, 0],
  c3: [0, 1],
  c7: [0, 1],
  c4: [1, 1],
  c8: [1, 1],
};

const JITTER: Record<string, [number, number]> = {
  c1: [0, 0],
  c2: [0.3, 0.2],
  c3: [0.14, 0.3],
  c4: [-0.2, 0.25],
  c5: [0.17, 0.2],
  c6: [-0.1, -0.3],
  c7: [0.25, -0.15],
  c8: [0.1, 0.35],
};

function layout(cells: Record<string, Cell>): Record<string, [number, number]> {
  const out: Record<string, [number, number]> = {};
  for (const id of IDS) {
    const [q, r] = cells[id];
    const [cx, cy] = center(q, r);
    out[id] = [cx + JITTER[id][0], cy + JITTER[id][1]];
  }
  return out;
}

export const LAYOUTS: Record<string, Record<string, [number, number]>> = {
  ecfp: layout(ECFP_CELLS),
  path: layout(PATH_CELLS),
};

const CELLS: Record<string, Record<string, Cell>> = {
  ecfp: ECFP_CELLS,
  path: PATH_CELLS,
};

export const ADDED_COORDS: Record<string, [number, number]> = {
  ecfp: center(2, 1),
  path: center(0, 2),
};

const INFO: DatasetInfo = {
  name: DATASET,
  compounds: IDS.length,
  representations: ["ecfp", "path"],
  projections: ["ecfp", "path"],
  projectors: ["ecfp", "path"],
  targets: ["T1"],
  conformers: IDS.length,
  artifact_version: 1,
};

function projectionPayload(tag: string): ProjectionPayload {
  const coords = IDS.map((id) => LAYOUTS[tag][id]);
  return {
    dataset: DATASET,
    representation: tag,
    source: "tsne",
    ids: [...IDS],
    coords,
    trust: {
      pearson: IDS.map(() => 0.95),
      kendall: IDS.map(() => 0.9),
      degenerate: IDS.map(() => false),
    },
    artifact_version: 1,
  };
}

function binsFor(tag: string, radius: number): BinPayload[] {
  const groups = new Map<string, string[]>();
  if (radius >= 10) {
    groups.set("0,0", [...IDS]);
  } else {
    for (const id of IDS) {
      const key = CELLS[tag][id].join(",");
      const got = groups.get(key) ?? [];
      got.push(id);
      groups.set(key, got);
    }
  }
  return [...groups.entries()].map(([key, members]) => {
    const [q, r] = key.split(",").map(Number);
    return {
      q,
      r,
      center: center(q, r, radius >= 10 ? radius : RADIUS),
      member_ids: members,
      count: members.length,
      aggregate: null,
      mean_trust: 0.9,
      opacity: 0.9,
    };
  });
}

function differenceFor(
  refRepr: string,
  otherRepr: string,
  selection: string[],
): Record<string, unknown> {
  const outer = binsFor(refRepr, RADIUS).map((bin) => ({ ...bin, opacity: 0.8 }));
  const groups = new Map<string, string[]>();
  for (const id of selection) {
    const key = CELLS[otherRepr][id].join(",");
    const got = groups.get(key) ?? [];
    got.push(id);
    groups.set(key, got);
  }
  const maxCount = Math.max(1, ...[...groups.values()].map((g) => g.length));
  const inner = [...groups.entries()].map(([key, members]) => {
    const [q, r] = key.split(",").map(Number);
    return {
      parent: [q, r],
      center: center(q, r),
      size: 0.9 * RADIUS * Math.sqrt(members.length / maxCount),
      member_ids: members,
    };
  });
  return {
    dataset: DATASET,
    reference: refRepr,
    compared: otherRepr,
    radius: RADIUS,
    outer_bins: outer,
    inner_hexes: inner,
    artifact_version: 1,
  };
}

function tableRowsFor(filters: string[]): TableRow[] {
  const pattern = /^(.+?)(>=|<=|==|!=|>|<)(.+)$/;
  let rows: TableRow[] = IDS.map((id) => ({
    id,
    logp: FEATURES[id].logp,
    molecular_weight: FEATURES[id].molecular_weight,
    "activity:T1": FEATURES[id].activity,
  }));
  for (const filter of filters) {
    const match = pattern.exec(filter);
    if (!match) continue;
    const [, feature, op, rawValue] = match.map((s) => (s ?? "").trim()) as string[];
    rows = rows.filter((row) => {
      const value = row[feature];
      const numeric = Number(rawValue);
      if (op === "==") return String(value) === rawValue || value === numeric;
      if (op === "!=") return String(value) !== rawValue && value !== numeric;
      if (typeof value !== "number" || Number.isNaN(numeric)) return false;
      if (op === ">") return value > numeric;
      if (op === "<") return value < numeric;
      if (op === ">=") return value >= numeric;
      return value <= numeric;
    });
  }
  return rows;
}

function alignFor(ids: string[]): AlignResponse {
  const base: [number, number, number][] = [
    [0, 0, 0],
    [1.5, 0, 0],
    [2.2, 1.2, 0],
    [3.5, 1.0, 0.8],
  ];
  return {
    dataset: DATASET,
    reference_id: ids[0],
    template: {
      elements: ["C", "C", "N"],
      bonds: [
        [0, 1, "single"],
        [1, 2, "single"],
      ],
      exact: true,
      rings_split: false,
    },
    compounds: ids.map((id, k) => ({
      id,
      elements: ["C", "C", "N", "O"],
      bonds: [
        [0, 1, "single"],
        [1, 2, "single"],
        [2, 3, "single"],
      ],
      rotation: [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
      ],
      translation: [0, 0, 0],
      rmsd: 0.05 * k,
      positions: base.map(([x, y, z]): [number, number, number] => [x, y, z + 0.1 * k]),
      core_atoms: [0, 1, 2],
      occurrence: [ids.length, ids.length, ids.length, 1],
      atom_opacity: [1, 1, 1, 0.3],
      bond_opacity: [1, 1, 0.3],
    })),
  };
}

interface StubState {
  selections: Map<string, { ids: string[]; provenance: string }>;
  added: { id: string; smiles: string; coords: Record<string, [number, number]> }[];
  addCounter: number;
}

export interface Stub {
  fetch: FetchLike;
  requests: string[];
  state: StubState;
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function errorResponse(status: number, code: string, message: string): Response {
  return json({ error: { code, message } }, status);
}

export function makeStub(): Stub {
  const state: StubState = { selections: new Map(), added: [], addCounter: 0 };
  const requests: string[] = [];

  const fetchImpl: FetchLike = async (url, init) => {
    requests.push(`${init?.method ?? "GET"} ${url}`);
    const parsed = new URL(url, "http://stub");
    const path = parsed.pathname;
    const body = init?.body ? JSON.parse(String(init.body)) : null;

    if (path === "/v1/datasets") return json([INFO]);

    const projection = /^\/v1\/datasets\/([^/]+)\/projections\/([^/]+)$/.exec(path);
    if (projection) {
      if (projection[1] !== DATASET) {
        return errorResponse(404, "unknown-dataset", projection[1]);
      }
      if (!(projection[2] in LAYOUTS)) {
        return errorResponse(404, "unknown-representation", projection[2]);
      }
      return json(projectionPayload(projection[2]));
    }

    if (path === `/v1/datasets/${DATASET}/bins`) {
      const tag = parsed.searchParams.get("representation") ?? "";
      if (!(tag in LAYOUTS)) return errorResponse(404, "unknown-representation", tag);
      const radius = Number(parsed.searchParams.get("radius"));
      return json({
        dataset: DATASET,
        representation: tag,
        radius,
        feature: parsed.searchParams.get("feature"),
        bins: binsFor(tag, radius),
        artifact_version: 1,
      });
    }

    if (path === `/v1/datasets/${DATASET}/difference`) {
      const ids = (parsed.searchParams.get("ids") ?? "").split(",").filter(Boolean);
      return json(
        differenceFor(
          parsed.searchParams.get("refRepr") ?? "",
          parsed.searchParams.get("otherRepr") ?? "",
          ids,
        ),
      );
    }

    if (path === `/v1/datasets/${DATASET}/table`) {
      const rows = tableRowsFor(parsed.searchParams.getAll("filter"));
      const sort = parsed.searchParams.get("sort");
      if (sort) {
        const descending = parsed.searchParams.get("descending") === "true";
        rows.sort((a, b) => {
          const av = a[sort];
          const bv = b[sort];
          if (av === bv) return 0;
          const cmp = (av ?? "") < (bv ?? "") ? -1 : 1;
          return descending ? -cmp : cmp;
        });
      }
      return json({
        dataset: DATASET,
        total: rows.length,
        page: 0,
        page_size: 50,
        rows,
        artifact_version: 1,
      });
    }

    if (path === `/v1/datasets/${DATASET}/align` && init?.method === "POST") {
      const wanted = (body as { ids: string[] }).ids;
      const unknown = wanted.filter((id) => !IDS.includes(id));
      if (unknown.length > 0) {
        return errorResponse(400, "missing-conformer", unknown.join(", "));
      }
      return json(alignFor(wanted));
    }

    if (path === `/v1/datasets/${DATASET}/export`) {
      const wanted = (parsed.searchParams.get("ids") ?? "").split(",").filter(Boolean);
      const blocks = wanted.map((id) => `${id}\n\n\n  0  0\nM  END\n$$$$`);
      return new Response(blocks.join("\n"), {
        status: 200,
        headers: { "content-type": "chemical/x-mdl-sdfile" },
      });
    }

    if (path === "/v1/sessions" && init?.method === "POST") {
      const dataset = (body as { dataset: string }).dataset;
      if (dataset !== DATASET) return errorResponse(404, "unknown-dataset", dataset);
      return json({ session_id: "sess-1", dataset }, 201);
    }

    if (path === "/v1/sessions/sess-1") {
      const selections: Record<string, { ids: string[]; provenance: string }> = {};
      for (const [name, stored] of state.selections) selections[name] = stored;
      return json({
        session_id: "sess-1",
        version: 1,
        dataset: DATASET,
        selections,
        view: {},
        added: state.added,
      });
    }

    const selectionPath = /^\/v1\/sessions\/sess-1\/selections(?:\/([^/]+))?$/.exec(path);
    if (selectionPath) {
      if (init?.method === "POST") {
        const payload = body as { name: string; ids?: string[]; provenance?: string };
        const stored = {
          ids: [...(payload.ids ?? [])].sort(),
          provenance: payload.provenance ?? "table",
        };
        state.selections.set(payload.name, stored);
        return json({ name: payload.name, ...stored }, 201);
      }
      const name = decodeURIComponent(selectionPath[1] ?? "");
      const stored = state.selections.get(name);
      if (!stored) return errorResponse(404, "unknown-selection", name);
      return json({ name, ...stored });
    }

    if (path === "/v1/sessions/sess-1/compounds" && init?.method === "POST") {
      const payload = body as { smiles: string; id?: string };
      if (payload.smiles.includes("!")) {
        return errorResponse(400, "parse-error", "cannot parse SMILES at offset 0");
      }
      state.addCounter += 1;
      const id = payload.id ?? `new-${state.addCounter}`;
      const coords = { ecfp: ADDED_COORDS.ecfp, path: ADDED_COORDS.path };
      state.added.push({ id, smiles: payload.smiles, coords });
      return json(
        {
          id,
          smiles: payload.smiles,
          highlight: true,
          coords,
          unavailable: [],
          descriptors: { molecular_weight: 123.4, h_bond_donors: 1 },
          fingerprints: { ecfp: [1, 5, 9] },
        },
        201,
      );
    }

    return errorResponse(404, "not-found", path);
  };

  return { fetch: fetchImpl, requests, state };
}
