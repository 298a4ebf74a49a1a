/** Breadthfirst pixel layout from the server's layer assignment.

The server decides which layer a node belongs to; this module only turns
layers into coordinates, so geometry stays out of the analytics contract.
*/

import type { GvNode, LayerAssignment } from "./api";

export const NODE_WIDTH = 132;
export const NODE_HEIGHT = 36;
export const COLUMN_GAP = 48;
export const ROW_GAP = 96;

export interface Point {
  x: number;
  y: number;
}

/** Node centers; layer i is strictly above layer j for i < j. */
export function breadthfirstLayout(
  nodes: GvNode[],
  layers: LayerAssignment,
): Map<string, Point> {
  // Nodes the assignment does not cover sink below every known layer.
  const known = Object.values(layers);
  const fallback = known.length === 0 ? 0 : Math.max(...known) + 1;
  const rows = new Map<number, GvNode[]>();
  for (const node of nodes) {
    const layer = layers[node.id] ?? fallback;
    const row = rows.get(layer);
    if (row === undefined) rows.set(layer, [node]);
    else row.push(node);
  }

  const positions = new Map<string, Point>();
  for (const [layer, row] of rows) {
    row.sort((a, b) =>
      a.label === b.label ? (a.id < b.id ? -1 : 1) : a.label < b.label ? -1 : 1);
    const pitch = NODE_WIDTH + COLUMN_GAP;
    row.forEach((node, index) => {
      positions.set(node.id, {
        x: (index - (row.length - 1) / 2) * pitch,
        y: layer * ROW_GAP,
      });
    });
  }
  return positions;
}
