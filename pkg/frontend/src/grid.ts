// Pairwise judgment grid: the human edits the upper triangle, the lower
// triangle is always the exact reciprocal and the diagonal is locked at 1.
// Everything here is pure so reciprocity is testable without a server.

export const SCALE_MIN = 1 / 9;
export const SCALE_MAX = 9;

export interface JudgmentGrid {
  nodeId: string;
  ids: string[];
  labels: string[];
  cells: number[][];
}

export function createGrid(nodeId: string, ids: string[], labels?: string[]): JudgmentGrid {
  const n = ids.length;
  if (n < 2) throw new Error(`node '${nodeId}' needs at least two children to compare`);
  const cells = Array.from({ length: n }, () => Array<number>(n).fill(1));
  return { nodeId, ids, labels: labels ?? ids, cells };
}

export function gridFromMatrix(nodeId: string, ids: string[], matrix: number[][],
                               labels?: string[]): JudgmentGrid {
  const grid = createGrid(nodeId, ids, labels);
  for (let i = 0; i < ids.length; i++) {
    for (let j = i + 1; j < ids.length; j++) {
      setJudgment(grid, i, j, matrix[i][j]);
    }
  }
  return grid;
}

export function isOnScale(value: number): boolean {
  return Number.isFinite(value) && value >= SCALE_MIN - 1e-12 && value <= SCALE_MAX + 1e-12;
}

/** Set one off-diagonal judgment; the mirror cell updates to the reciprocal. */
export function setJudgment(grid: JudgmentGrid, row: number, col: number,
                            value: number): JudgmentGrid {
  if (row === col) throw new Error("diagonal is locked at 1");
  if (!isOnScale(value)) {
    throw new Error(`judgment ${value} outside the scale [1/9, 9]`);
  }
  grid.cells[row][col] = value;
  grid.cells[col][row] = 1 / value;
  return grid;
}

export function matrixOf(grid: JudgmentGrid): number[][] {
  return grid.cells.map((row) => [...row]);
}

export function reciprocityHolds(grid: JudgmentGrid): boolean {
  const n = grid.ids.length;
  for (let i = 0; i < n; i++) {
    if (grid.cells[i][i] !== 1) return false;
    for (let j = i + 1; j < n; j++) {
      if (grid.cells[j][i] !== 1 / grid.cells[i][j]) return false;
    }
  }
  return true;
}

/**
 * The triad (i,j,k) whose indirect judgment a_ij*a_jk strays farthest from
 * the direct a_ik, as a hint for which judgments to revise first.
 */
export function mostInconsistentTriad(grid: JudgmentGrid):
    { triad: [number, number, number]; deviation: number } | null {
  const n = grid.ids.length;
  let best: [number, number, number] | null = null;
  let worst = 1;
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      for (let k = j + 1; k < n; k++) {
        const indirect = grid.cells[i][j] * grid.cells[j][k];
        const ratio = indirect / grid.cells[i][k];
        const deviation = Math.max(ratio, 1 / ratio);
        if (deviation > worst) {
          worst = deviation;
          best = [i, j, k];
        }
      }
    }
  }
  return best ? { triad: best, deviation: worst } : null;
}

export function triadHint(grid: JudgmentGrid): string | null {
  const found = mostInconsistentTriad(grid);
  if (!found) return null;
  const [i, j, k] = found.triad;
  return `check ${grid.labels[i]} / ${grid.labels[j]} / ${grid.labels[k]}`;
}
