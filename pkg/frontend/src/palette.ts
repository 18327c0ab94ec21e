/** Color-vision-deficiency-safe palette (Okabe & Ito) plus element colors. */

export const OKABE_ITO = {
  black: "#000000",
  orange: "#E69F00",
  skyBlue: "#56B4E9",
  bluishGreen: "#009E73",
  yellow: "#F0E442",
  blue: "#0072B2",
  vermillion: "#D55E00",
  reddishPurple: "#CC79A7",
} as const;

/** Reserved for compounds the user added; never assigned to a class. */
export const HIGHLIGHT_COLOR = OKABE_ITO.yellow;

export const CLASS_COLORS: Record<string, string> = {
  Active: OKABE_ITO.bluishGreen,
  "Moderately Active": OKABE_ITO.skyBlue,
  Inactive: OKABE_ITO.vermillion,
  Unlabeled: "#999999",
};

export const NEUTRAL_BIN = "#8C8C8C";
export const SELECTION_STROKE = OKABE_ITO.black;
export const INNER_HEX_FILL = OKABE_ITO.blue;

/** Conventional element colors; carbon is muted so heteroatoms stand out. */
export const ELEMENT_COLORS: Record<string, string> = {
  H: "#E8E8E8",
  C: "#909090",
  N: "#3050F8",
  O: "#FF0D0D",
  F: "#90E050",
  Cl: "#1FF01F",
  Br: "#A62929",
  I: "#940094",
  S: "#FFFF30",
  P: "#FF8000",
  B: "#FFB5B5",
};

export const ELEMENT_FALLBACK = OKABE_ITO.reddishPurple;

export function elementColor(element: string): string {
  return ELEMENT_COLORS[element] ?? ELEMENT_FALLBACK;
}

export function classColor(label: string | null): string {
  if (label === null) return NEUTRAL_BIN;
  return CLASS_COLORS[label] ?? NEUTRAL_BIN;
}

function channel(start: number, end: number, t: number): number {
  return Math.round(start + (end - start) * t);
}

/** Two-point ramp between Okabe-Ito sky blue and vermillion. */
export function numericColor(value: number, low: number, high: number): string {
  const t = high > low ? Math.min(1, Math.max(0, (value - low) / (high - low))) : 0.5;
  const from = [0x56, 0xb4, 0xe9];
  const to = [0xd5, 0x5e, 0x00];
  const parts = from.map((c, i) =>
    channel(c, to[i], t).toString(16).padStart(2, "0"),
  );
  return "#" + parts.join("");
}
