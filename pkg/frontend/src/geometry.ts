/** Presentation geometry: hexagon outlines, viewport fitting, 3D projection.
 *
 * Hexagons are pointy-top on an axial grid; center formulas mirror the
 * service so client-drawn grids coincide with server-binned cells.
 */

export const OPACITY_FLOOR = 0.08;

const SQRT3 = Math.sqrt(3);

export function hexCenter(
  q: number,
  r: number,
  circumradius: number,
  origin: [number, number] = [0, 0],
): [number, number] {
  return [
    origin[0] + circumradius * SQRT3 * (q + r / 2),
    origin[1] + circumradius * 1.5 * r,
  ];
}

export function axialFor(
  x: number,
  y: number,
  circumradius: number,
  origin: [number, number] = [0, 0],
): [number, number] {
  const px = (x - origin[0]) / circumradius;
  const py = (y - origin[1]) / circumradius;
  const qf = (SQRT3 / 3) * px - py / 3;
  const rf = (2 / 3) * py;
  return cubeRound(qf, rf);
}

function cubeRound(qf: number, rf: number): [number, number] {
  const sf = -qf - rf;
  let q = Math.round(qf);
  let r = Math.round(rf);
  const s = Math.round(sf);
  const dq = Math.abs(q - qf);
  const dr = Math.abs(r - rf);
  const ds = Math.abs(s - sf);
  if (dq > dr && dq > ds) q = -r - s;
  else if (dr > ds) r = -q - s;
  return [q, r];
}

/** Corner ring of a pointy-top hexagon, as an SVG points string. */
export function hexPoints(cx: number, cy: number, circumradius: number): string {
  const corners: string[] = [];
  for (let k = 0; k < 6; k += 1) {
    const angle = (Math.PI / 180) * (60 * k - 30);
    const x = cx + circumradius * Math.cos(angle);
    const y = cy + circumradius * Math.sin(angle);
    corners.push(`${round(x)},${round(y)}`);
  }
  return corners.join(" ");
}

function round(v: number): number {
  return Math.round(v * 100) / 100;
}

export interface Viewport {
  minX: number;
  minY: number;
  width: number;
  height: number;
}

export function fitViewport(
  points: Iterable<[number, number]>,
  pad: number,
): Viewport {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const [x, y] of points) {
    minX = Math.min(minX, x);
    minY = Math.min(minY, y);
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  }
  if (!Number.isFinite(minX)) {
    return { minX: -1, minY: -1, width: 2, height: 2 };
  }
  return {
    minX: minX - pad,
    minY: minY - pad,
    width: Math.max(maxX - minX + 2 * pad, 1e-6),
    height: Math.max(maxY - minY + 2 * pad, 1e-6),
  };
}

export function pointInPolygon(
  x: number,
  y: number,
  polygon: [number, number][],
): boolean {
  let inside = false;
  const n = polygon.length;
  for (let i = 0, j = n - 1; i < n; j = i, i += 1) {
    const [xi, yi] = polygon[i];
    const [xj, yj] = polygon[j];
    const crosses = yi > y !== yj > y;
    if (crosses && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

/** Reflect opacities about the midpoint of [floor, 1]; its own inverse. */
export function invertOpacity(value: number, floor: number = OPACITY_FLOOR): number {
  return 1 + floor - value;
}

export interface Camera {
  yaw: number;
  pitch: number;
  distance: number;
  scale: number;
}

export interface ProjectedPoint {
  x: number;
  y: number;
  depth: number;
}

/** Rotate about y (yaw) then x (pitch), then perspective-divide. */
export function project3d(
  position: [number, number, number],
  camera: Camera,
): ProjectedPoint {
  const [px, py, pz] = position;
  const cy = Math.cos(camera.yaw);
  const sy = Math.sin(camera.yaw);
  const x1 = cy * px + sy * pz;
  const z1 = -sy * px + cy * pz;
  const cp = Math.cos(camera.pitch);
  const sp = Math.sin(camera.pitch);
  const y2 = cp * py - sp * z1;
  const z2 = sp * py + cp * z1;
  const depth = camera.distance + z2;
  const w = camera.distance / Math.max(depth, 1e-6);
  return { x: x1 * w * camera.scale, y: -y2 * w * camera.scale, depth };
}

export function centroid3d(points: [number, number, number][]): [number, number, number] {
  let sx = 0;
  let sy = 0;
  let sz = 0;
  for (const [x, y, z] of points) {
    sx += x;
    sy += y;
    sz += z;
  }
  const n = Math.max(points.length, 1);
  return [sx / n, sy / n, sz / n];
}
