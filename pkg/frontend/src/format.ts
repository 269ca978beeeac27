// Numeric display mirrors the server's 12-significant-digit report format.

export function formatSig12(x: number): string {
  if (!Number.isFinite(x)) {
    throw new Error(`cannot format non-finite number ${x}`);
  }
  if (x === 0) return "0";
  // toPrecision keeps trailing zeros; round-tripping through Number drops
  // them, matching the server's %.12g output for every value it emits
  return String(Number(x.toPrecision(12)));
}

export function formatPercent(x: number): string {
  return `${(x * 100).toFixed(1)}%`;
}
