/** Small colormaps for the probability figures; the picker swaps them. */

export type Rgb = [number, number, number];

interface Colormap {
  name: string;
  stops: Rgb[];
}

const INFERNO: Rgb[] = [
  [0, 0, 4],
  [40, 11, 84],
  [101, 21, 110],
  [159, 42, 99],
  [212, 72, 66],
  [245, 125, 21],
  [250, 193, 39],
  [252, 255, 164],
];

const VIRIDIS: Rgb[] = [
  [68, 1, 84],
  [70, 50, 127],
  [54, 92, 141],
  [39, 127, 142],
  [31, 161, 135],
  [74, 194, 109],
  [159, 218, 58],
  [253, 231, 37],
];

const GRAY: Rgb[] = [
  [0, 0, 0],
  [255, 255, 255],
];

export const COLORMAPS: Colormap[] = [
  { name: "inferno", stops: INFERNO },
  { name: "viridis", stops: VIRIDIS },
  { name: "gray", stops: GRAY },
];

export function sampleColormap(name: string, t: number): Rgb {
  const map = COLORMAPS.find((c) => c.name === name) ?? COLORMAPS[0]!;
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (map.stops.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.min(lo + 1, map.stops.length - 1);
  const frac = pos - lo;
  const a = map.stops[lo]!;
  const b = map.stops[hi]!;
  return [
    Math.round(a[0] + (b[0] - a[0]) * frac),
    Math.round(a[1] + (b[1] - a[1]) * frac),
    Math.round(a[2] + (b[2] - a[2]) * frac),
  ];
}
