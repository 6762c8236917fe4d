// Cluster colors: a rainbow-like sequential palette starting at red for the
// largest cluster (#0), plus a colorblind-safe alternative (Okabe-Ito).

const OKABE_ITO = [
  "#E69F00", "#56B4E9", "#009E73", "#F0E442",
  "#0072B2", "#D55E00", "#CC79A7", "#999999",
];

export function clusterColor(index: number, total: number,
                             colorblindSafe = false): string {
  if (colorblindSafe) {
    return OKABE_ITO[index % OKABE_ITO.length];
  }
  const span = Math.max(total, 1);
  const hue = (index / span) * 300; // red (0) through violet (300)
  return `hsl(${Math.round(hue)}, 75%, 45%)`;
}

export const DIM_OPACITY = "0.15";
export const UNCERTAINTY_DISC_COLOR = "#d62728";
