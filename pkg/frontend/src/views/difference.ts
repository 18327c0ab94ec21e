/** Difference view: outer hexagons show the reference map with trust
 * opacity; inner hexagons show where the selection lands under the
 * compared representation, sized by occupancy. Inner cells may sit in
 * regions the reference layout leaves empty; that displacement is the
 * point of the view.
 */

import { fitViewport, hexPoints } from "../geometry";
import { tag } from "../markup";
import { HIGHLIGHT_COLOR, INNER_HEX_FILL, NEUTRAL_BIN, SELECTION_STROKE } from "../palette";
import type { AddedCompound } from "../state";
import type { DifferenceResponse } from "../types";

export interface DifferenceOptions {
  radius: number;
  selection: ReadonlySet<string>;
  added: AddedCompound[];
}

export function renderDifference(
  model: DifferenceResponse,
  options: DifferenceOptions,
): string {
  const centers: [number, number][] = [
    ...model.outer_bins.map((b) => b.center),
    ...model.inner_hexes.map((h) => h.center),
  ];
  if (centers.length === 0) {
    return tag(
      "svg",
      { class: "view difference", viewBox: "-1 -1 2 2", xmlns: "http://www.w3.org/2000/svg" },
      tag("text", { class: "empty", x: 0, y: 0, "font-size": 0.2 }, "empty selection"),
    );
  }
  const viewport = fitViewport(centers, options.radius * 2);
  const outer = model.outer_bins.map((bin) => {
    const selectedMembers = bin.member_ids.filter((id) =>
      options.selection.has(id),
    );
    return tag("polygon", {
      class: "hex outer",
      points: hexPoints(bin.center[0], bin.center[1], options.radius),
      fill: NEUTRAL_BIN,
      "fill-opacity": bin.opacity.toFixed(3),
      stroke: "#ffffff",
      "stroke-width": 0.5,
      "data-hex": `${bin.q},${bin.r}`,
      "data-ids": bin.member_ids.join(","),
      "data-selected-ids": selectedMembers.join(","),
    });
  });
  const inner = model.inner_hexes.map((hex) =>
    tag("polygon", {
      class: "hex inner",
      points: hexPoints(hex.center[0], hex.center[1], hex.size),
      fill: INNER_HEX_FILL,
      "fill-opacity": 0.85,
      stroke: SELECTION_STROKE,
      "stroke-width": 0.5,
      "data-hex": `${hex.parent[0]},${hex.parent[1]}`,
      "data-count": hex.member_ids.length,
      "data-selected-ids": hex.member_ids.join(","),
    }),
  );
  const markers = options.added
    .filter((compound) => {
      const xy = compound.coords[model.reference];
      return xy !== undefined && xy !== null;
    })
    .map((compound) => {
      const xy = compound.coords[model.reference] as [number, number];
      return tag("circle", {
        class: "added",
        cx: xy[0].toFixed(2),
        cy: xy[1].toFixed(2),
        r: (options.radius * 0.3).toFixed(2),
        fill: HIGHLIGHT_COLOR,
        stroke: SELECTION_STROKE,
        "stroke-width": 1,
        "data-id": compound.id,
        "data-added": "true",
        "data-selected": options.selection.has(compound.id) ? "true" : "false",
      });
    });
  return tag(
    "svg",
    {
      class: "view difference",
      viewBox: `${viewport.minX} ${viewport.minY} ${viewport.width} ${viewport.height}`,
      xmlns: "http://www.w3.org/2000/svg",
    },
    outer.join("") + inner.join("") + markers.join(""),
  );
}

/** Clicking an outer hexagon selects its members, like the main map. */
export function idsForOuterClick(
  model: DifferenceResponse,
  q: number,
  r: number,
  current: ReadonlySet<string>,
  additive: boolean,
): Set<string> {
  const bin = model.outer_bins.find((b) => b.q === q && b.r === r);
  const next = additive ? new Set(current) : new Set<string>();
  if (bin) for (const id of bin.member_ids) next.add(id);
  return next;
}
