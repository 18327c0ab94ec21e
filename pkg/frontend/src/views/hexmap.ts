/** Hexagonal view: the server's bins drawn as a pointy-top mosaic.
 *
 * Fill encodes the bin aggregate (modal class or mean feature value),
 * fill opacity the server-computed mean trust. Cells holding selected
 * compounds carry a selection outline plus the exact member ids that
 * are selected, so the linked selection can be read back losslessly.
 */

import { fitViewport, hexPoints } from "../geometry";
import { tag } from "../markup";
import {
  CLASS_COLORS,
  HIGHLIGHT_COLOR,
  NEUTRAL_BIN,
  SELECTION_STROKE,
  classColor,
  numericColor,
} from "../palette";
import type { AddedCompound, HoverTarget } from "../state";
import type { BinPayload } from "../types";

export interface HexMapOptions {
  radius: number;
  representation: string;
  colorFeature: string | null;
  selection: ReadonlySet<string>;
  added: AddedCompound[];
  hover: HoverTarget | null;
}

function binFill(
  bin: BinPayload,
  colorFeature: string | null,
  low: number,
  high: number,
): string {
  if (colorFeature === null || bin.aggregate === null) return NEUTRAL_BIN;
  if (typeof bin.aggregate === "string") return classColor(bin.aggregate);
  return numericColor(bin.aggregate, low, high);
}

function numericRange(bins: BinPayload[]): [number, number] {
  let low = Infinity;
  let high = -Infinity;
  for (const bin of bins) {
    if (typeof bin.aggregate === "number") {
      low = Math.min(low, bin.aggregate);
      high = Math.max(high, bin.aggregate);
    }
  }
  if (!Number.isFinite(low)) return [0, 1];
  return [low, high];
}

export function renderHexMap(bins: BinPayload[], options: HexMapOptions): string {
  const viewport = fitViewport(
    bins.map((b) => b.center),
    options.radius * 2,
  );
  const [low, high] = numericRange(bins);
  const cells: string[] = [];
  for (const bin of bins) {
    const selectedMembers = bin.member_ids.filter((id) =>
      options.selection.has(id),
    );
    const isHovered =
      options.hover?.kind === "hex" && options.hover.key === `${bin.q},${bin.r}`;
    cells.push(
      tag("polygon", {
        class: "hex",
        points: hexPoints(bin.center[0], bin.center[1], options.radius),
        fill: binFill(bin, options.colorFeature, low, high),
        "fill-opacity": bin.opacity.toFixed(3),
        stroke: selectedMembers.length > 0 ? SELECTION_STROKE : "#ffffff",
        "stroke-width": selectedMembers.length > 0 ? 2 : 0.5,
        "data-hex": `${bin.q},${bin.r}`,
        "data-ids": bin.member_ids.join(","),
        "data-count": bin.count,
        "data-selected-ids": selectedMembers.join(","),
        "data-hovered": isHovered ? "true" : undefined,
      }),
    );
  }
  const markers: string[] = [];
  for (const compound of options.added) {
    const xy = compound.coords[options.representation];
    if (!xy) continue;
    markers.push(
      tag("circle", {
        class: "added",
        cx: xy[0].toFixed(2),
        cy: xy[1].toFixed(2),
        r: (options.radius * 0.35).toFixed(2),
        fill: HIGHLIGHT_COLOR,
        stroke: SELECTION_STROKE,
        "stroke-width": 1,
        "data-id": compound.id,
        "data-added": "true",
        "data-selected": options.selection.has(compound.id) ? "true" : "false",
      }),
    );
  }
  const empty =
    bins.length === 0
      ? tag("text", { class: "empty", x: 0, y: 0 }, "no bins to draw")
      : "";
  return tag(
    "svg",
    {
      class: "view hexmap",
      viewBox: `${viewport.minX} ${viewport.minY} ${viewport.width} ${viewport.height}`,
      xmlns: "http://www.w3.org/2000/svg",
    },
    cells.join("") + markers.join("") + empty,
  );
}

/** Class legend rendered beside the map when coloring by activity. */
export function renderClassLegend(): string {
  const entries = Object.entries(CLASS_COLORS).map(([label, color], index) =>
    tag(
      "g",
      { transform: `translate(0 ${index * 18})` },
      tag("rect", { width: 12, height: 12, fill: color }) +
        tag("text", { x: 16, y: 10, "font-size": 11 }, label),
    ),
  );
  return tag(
    "svg",
    { class: "legend", viewBox: "0 0 160 80", xmlns: "http://www.w3.org/2000/svg" },
    entries.join(""),
  );
}

/** Selection handler for a hexagon click: the cell's members join
 * (or replace) the shared selection.
 */
export function idsForHexClick(
  bins: BinPayload[],
  q: number,
  r: number,
  current: ReadonlySet<string>,
  additive: boolean,
): Set<string> {
  const bin = bins.find((b) => b.q === q && b.r === r);
  const next = additive ? new Set(current) : new Set<string>();
  if (bin) for (const id of bin.member_ids) next.add(id);
  return next;
}
