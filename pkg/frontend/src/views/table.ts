/** Table view: server-filtered rows plus any user-added compounds.
 * Added rows are painted in the reserved highlight color; selected
 * rows are tagged for the linked selection. Group-by-hexagon rows get
 * a miniature box plot of the grouped feature.
 */

import { tag, escapeXml } from "../markup";
import { HIGHLIGHT_COLOR } from "../palette";
import type { AddedCompound } from "../state";
import type { HexGroup, TableRow } from "../types";

export interface TableOptions {
  columns: string[];
  selection: ReadonlySet<string>;
  added: AddedCompound[];
  sort: string | null;
  descending: boolean;
}

function formatValue(value: number | string | null): string {
  if (value === null) return "";
  if (typeof value === "number") {
    return Number.isInteger(value) ? String(value) : value.toFixed(3);
  }
  return value;
}

function headerCell(column: string, options: TableOptions): string {
  const arrow =
    options.sort === column ? (options.descending ? " ↓" : " ↑") : "";
  return tag(
    "th",
    { "data-column": column, scope: "col" },
    escapeXml(column) + arrow,
  );
}

function rowCells(row: Record<string, number | string | null>, columns: string[]): string {
  return columns
    .map((column) => tag("td", {}, escapeXml(formatValue(row[column] ?? null))))
    .join("");
}

export function renderTable(rows: TableRow[], options: TableOptions): string {
  const header = tag(
    "tr",
    {},
    ["id", ...options.columns].map((c) => headerCell(c, options)).join(""),
  );
  const bodyRows: string[] = [];
  for (const compound of options.added) {
    const pseudo: Record<string, number | string | null> = {
      ...compound.descriptors,
    };
    bodyRows.push(
      tag(
        "tr",
        {
          "data-id": compound.id,
          "data-added": "true",
          "data-selected": options.selection.has(compound.id) ? "true" : "false",
          style: `background:${HIGHLIGHT_COLOR}`,
        },
        tag("td", {}, escapeXml(compound.id)) + rowCells(pseudo, options.columns),
      ),
    );
  }
  for (const row of rows) {
    bodyRows.push(
      tag(
        "tr",
        {
          "data-id": row.id,
          "data-selected": options.selection.has(row.id) ? "true" : "false",
        },
        tag("td", {}, escapeXml(row.id)) + rowCells(row, options.columns),
      ),
    );
  }
  const empty =
    bodyRows.length === 0
      ? tag("tr", { class: "empty" }, tag("td", {}, "no rows"))
      : "";
  return tag(
    "table",
    { class: "view table" },
    tag("thead", {}, header) + tag("tbody", {}, bodyRows.join("") + empty),
  );
}

const BOX_WIDTH = 120;
const BOX_HEIGHT = 18;

/** Miniature box plot spanning the group's own min..max. */
export function renderBoxPlot(group: HexGroup): string {
  const q = group.quartiles;
  if (q === null) return tag("svg", { class: "boxplot empty", width: BOX_WIDTH, height: BOX_HEIGHT });
  const span = q.max - q.min || 1;
  const x = (v: number): number =>
    Math.round(((v - q.min) / span) * (BOX_WIDTH - 8)) + 4;
  const mid = BOX_HEIGHT / 2;
  const parts = [
    tag("line", { x1: x(q.min), x2: x(q.max), y1: mid, y2: mid, stroke: "#555" }),
    tag("rect", {
      x: x(q.q1),
      y: 3,
      width: Math.max(x(q.q3) - x(q.q1), 1),
      height: BOX_HEIGHT - 6,
      fill: "#56B4E9",
      stroke: "#555",
    }),
    tag("line", {
      x1: x(q.median),
      x2: x(q.median),
      y1: 3,
      y2: BOX_HEIGHT - 3,
      stroke: "#000",
      "stroke-width": 2,
    }),
  ];
  return tag(
    "svg",
    {
      class: "boxplot",
      width: BOX_WIDTH,
      height: BOX_HEIGHT,
      viewBox: `0 0 ${BOX_WIDTH} ${BOX_HEIGHT}`,
      xmlns: "http://www.w3.org/2000/svg",
    },
    parts.join(""),
  );
}

export function renderGroupedTable(
  groups: HexGroup[],
  selection: ReadonlySet<string>,
): string {
  const header = tag(
    "tr",
    {},
    ["hexagon", "count", "feature", "distribution"]
      .map((c) => tag("th", { scope: "col" }, c))
      .join(""),
  );
  const rows = groups.map((group) => {
    const selectedMembers = group.member_ids.filter((id) => selection.has(id));
    return tag(
      "tr",
      {
        "data-hex": `${group.hex[0]},${group.hex[1]}`,
        "data-ids": group.member_ids.join(","),
        "data-selected-ids": selectedMembers.join(","),
      },
      tag("td", {}, `(${group.hex[0]}, ${group.hex[1]})`) +
        tag("td", {}, String(group.count)) +
        tag("td", {}, escapeXml(group.feature)) +
        tag("td", {}, renderBoxPlot(group)),
    );
  });
  const empty =
    rows.length === 0 ? tag("tr", { class: "empty" }, tag("td", {}, "no groups")) : "";
  return tag(
    "table",
    { class: "view table grouped" },
    tag("thead", {}, header) + tag("tbody", {}, rows.join("") + empty),
  );
}

/** Row-click handler: toggles one compound in the shared selection. */
export function idsForRowClick(
  current: ReadonlySet<string>,
  id: string,
  additive: boolean,
): Set<string> {
  const next = additive ? new Set(current) : new Set<string>();
  if (additive && next.has(id)) next.delete(id);
  else next.add(id);
  return next;
}
