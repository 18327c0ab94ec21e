/** Detail view: only the selected compounds, zoomed to their bounding
 * box, with a subtle overlay of the same hexagonal grid so positions
 * stay anchored to the map. Lasso selection is resolved against the
 * individual compound positions shown here.
 */

import {
  axialFor,
  fitViewport,
  hexCenter,
  hexPoints,
  pointInPolygon,
} from "../geometry";
import { tag } from "../markup";
import { HIGHLIGHT_COLOR, OKABE_ITO, SELECTION_STROKE } from "../palette";
import type { AddedCompound } from "../state";
import type { ProjectionPayload } from "../types";

export interface DetailOptions {
  radius: number;
  representation: string;
  selection: ReadonlySet<string>;
  added: AddedCompound[];
}

interface Placed {
  id: string;
  x: number;
  y: number;
  added: boolean;
}

function placedCompounds(
  projection: ProjectionPayload,
  options: DetailOptions,
): Placed[] {
  const placed: Placed[] = [];
  projection.ids.forEach((id, index) => {
    if (options.selection.has(id)) {
      const [x, y] = projection.coords[index];
      placed.push({ id, x, y, added: false });
    }
  });
  for (const compound of options.added) {
    const xy = compound.coords[options.representation];
    if (xy && options.selection.has(compound.id)) {
      placed.push({ id: compound.id, x: xy[0], y: xy[1], added: true });
    }
  }
  return placed;
}

function gridOverlay(placed: Placed[], radius: number): string {
  const seen = new Set<string>();
  const cells: string[] = [];
  for (const point of placed) {
    const [q, r] = axialFor(point.x, point.y, radius);
    for (let dq = -1; dq <= 1; dq += 1) {
      for (let dr = -1; dr <= 1; dr += 1) {
        const key = `${q + dq},${r + dr}`;
        if (seen.has(key)) continue;
        seen.add(key);
        const [cx, cy] = hexCenter(q + dq, r + dr, radius);
        cells.push(
          tag("polygon", {
            class: "grid",
            points: hexPoints(cx, cy, radius),
            fill: "none",
            stroke: "#c8c8c8",
            "stroke-width": 0.4,
          }),
        );
      }
    }
  }
  return cells.join("");
}

export function renderDetail(
  projection: ProjectionPayload,
  options: DetailOptions,
): string {
  const placed = placedCompounds(projection, options);
  if (placed.length === 0) {
    return tag(
      "svg",
      { class: "view detail", viewBox: "-1 -1 2 2", xmlns: "http://www.w3.org/2000/svg" },
      tag("text", { class: "empty", x: 0, y: 0, "font-size": 0.2 }, "empty selection"),
    );
  }
  const viewport = fitViewport(
    placed.map((p): [number, number] => [p.x, p.y]),
    options.radius * 1.5,
  );
  const dots = placed.map((point) =>
    tag("circle", {
      class: point.added ? "compound added" : "compound",
      cx: point.x.toFixed(2),
      cy: point.y.toFixed(2),
      r: (options.radius * (point.added ? 0.3 : 0.22)).toFixed(2),
      fill: point.added ? HIGHLIGHT_COLOR : OKABE_ITO.blue,
      stroke: SELECTION_STROKE,
      "stroke-width": 0.5,
      "data-id": point.id,
      "data-selected": "true",
      "data-added": point.added ? "true" : undefined,
    }),
  );
  return tag(
    "svg",
    {
      class: "view detail",
      viewBox: `${viewport.minX} ${viewport.minY} ${viewport.width} ${viewport.height}`,
      xmlns: "http://www.w3.org/2000/svg",
    },
    gridOverlay(placed, options.radius) + dots.join(""),
  );
}

/** Lasso handler: compounds inside the polygon, including any added
 * compounds placed on this representation's map.
 */
export function idsForLasso(
  projection: ProjectionPayload,
  added: AddedCompound[],
  representation: string,
  polygon: [number, number][],
): Set<string> {
  const inside = new Set<string>();
  if (polygon.length < 3) return inside;
  projection.ids.forEach((id, index) => {
    const [x, y] = projection.coords[index];
    if (pointInPolygon(x, y, polygon)) inside.add(id);
  });
  for (const compound of added) {
    const xy = compound.coords[representation];
    if (xy && pointInPolygon(xy[0], xy[1], polygon)) inside.add(compound.id);
  }
  return inside;
}
