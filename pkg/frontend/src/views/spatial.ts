/** 3D view: aligned conformers as ball-and-stick with per-atom
 * occurrence opacity from the server. The client owns only display
 * options: hydrogen visibility, sizes, global opacity, the inversion
 * toggle (an involution, mirroring the service), and the common-part
 * filter. Painter's-algorithm depth sort, no external renderer.
 */

import {
  type Camera,
  centroid3d,
  invertOpacity,
  project3d,
} from "../geometry";
import { tag } from "../markup";
import { HIGHLIGHT_COLOR, elementColor } from "../palette";
import type { AddedCompound, SpatialOptions } from "../state";
import type { AlignResponse } from "../types";

export interface SpatialRenderOptions extends SpatialOptions {
  selection: ReadonlySet<string>;
  added: AddedCompound[];
  camera?: Camera;
}

const DEFAULT_CAMERA: Camera = { yaw: 0.6, pitch: 0.35, distance: 40, scale: 14 };

interface Drawable {
  depth: number;
  markup: string;
}

function atomOpacity(
  raw: number,
  options: SpatialRenderOptions,
): number {
  const flipped = options.inverted ? invertOpacity(raw) : raw;
  return Math.max(0, Math.min(1, flipped * options.globalOpacity));
}

function compoundDrawables(
  compound: AlignResponse["compounds"][number],
  options: SpatialRenderOptions,
  camera: Camera,
  center: [number, number, number],
): Drawable[] {
  const core = new Set(compound.core_atoms);
  const visible = (index: number): boolean => {
    if (options.commonOnly && !core.has(index)) return false;
    if (!options.showHydrogens && compound.elements[index] === "H") return false;
    return true;
  };
  const projected = compound.positions.map((p) =>
    project3d([p[0] - center[0], p[1] - center[1], p[2] - center[2]], camera),
  );
  const drawables: Drawable[] = [];
  compound.bonds.forEach(([a, b], bondIndex) => {
    if (!visible(a) || !visible(b)) return;
    const pa = projected[a];
    const pb = projected[b];
    drawables.push({
      depth: (pa.depth + pb.depth) / 2,
      markup: tag("line", {
        class: "bond",
        x1: pa.x.toFixed(2),
        y1: pa.y.toFixed(2),
        x2: pb.x.toFixed(2),
        y2: pb.y.toFixed(2),
        stroke: "#707070",
        "stroke-width": (1.6 * options.bondScale).toFixed(2),
        "stroke-opacity": atomOpacity(
          compound.bond_opacity[bondIndex] ?? 1,
          options,
        ).toFixed(3),
      }),
    });
  });
  compound.elements.forEach((element, index) => {
    if (!visible(index)) return;
    const point = projected[index];
    drawables.push({
      depth: point.depth,
      markup: tag("circle", {
        class: "atom",
        cx: point.x.toFixed(2),
        cy: point.y.toFixed(2),
        r: (2.6 * options.atomScale).toFixed(2),
        fill: elementColor(element),
        "fill-opacity": atomOpacity(compound.atom_opacity[index] ?? 1, options).toFixed(3),
        stroke: core.has(index) ? "#000000" : "none",
        "stroke-width": core.has(index) ? 0.4 : 0,
        "data-element": element,
      }),
    });
  });
  return drawables;
}

export function renderSpatial(
  alignment: AlignResponse | null,
  options: SpatialRenderOptions,
): string {
  const camera = options.camera ?? DEFAULT_CAMERA;
  const addedBadges = options.added
    .filter((compound) => options.selection.has(compound.id))
    .map((compound, index) =>
      tag(
        "text",
        {
          class: "added-badge",
          x: 4,
          y: 14 + index * 14,
          "font-size": 10,
          fill: HIGHLIGHT_COLOR,
          stroke: "#000000",
          "stroke-width": 0.2,
          "data-id": compound.id,
          "data-added": "true",
          "data-selected": "true",
        },
        `${compound.id} (no conformer)`,
      ),
    );
  if (alignment === null || alignment.compounds.length === 0) {
    const note =
      addedBadges.length > 0
        ? addedBadges.join("")
        : tag("text", { class: "empty", x: 4, y: 14, "font-size": 10 }, "empty selection");
    return tag(
      "svg",
      { class: "view spatial", viewBox: "0 0 240 160", xmlns: "http://www.w3.org/2000/svg" },
      note,
    );
  }
  const allPositions = alignment.compounds.flatMap((c) => c.positions);
  const center = centroid3d(allPositions);
  const groups = alignment.compounds.map((compound) => {
    const drawables = compoundDrawables(compound, options, camera, center).sort(
      (a, b) => b.depth - a.depth,
    );
    return tag(
      "g",
      {
        class: "compound",
        "data-id": compound.id,
        "data-selected": options.selection.has(compound.id) ? "true" : "false",
        "data-rmsd": compound.rmsd.toFixed(4),
      },
      drawables.map((d) => d.markup).join(""),
    );
  });
  const warning = alignment.template.rings_split
    ? tag(
        "text",
        { class: "warning", x: 4, y: -4, "font-size": 9, fill: "#D55E00" },
        "common core splits a ring",
      )
    : "";
  return tag(
    "svg",
    {
      class: "view spatial",
      viewBox: "-120 -80 240 160",
      xmlns: "http://www.w3.org/2000/svg",
    },
    groups.join("") + warning + addedBadges.join(""),
  );
}
