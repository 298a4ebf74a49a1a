/** View state: task filter, pan/zoom transform, selection, fetch ordering. */

import type { GlobalViewGraph } from "./api";

export type TaskFilter = "all" | string;

export interface Transform {
  x: number;
  y: number;
  k: number;
}

export class ViewState {
  readonly availableTasks: ReadonlySet<string>;
  selectedTaskFilter: TaskFilter = "all";
  transform: Transform = { x: 0, y: 0, k: 1 };
  selectedNode: string | null = null;

  constructor(availableTasks: Iterable<string> = []) {
    this.availableTasks = new Set(availableTasks);
  }

  setTaskFilter(filter: TaskFilter): void {
    if (filter !== "all" && !this.availableTasks.has(filter)) {
      throw new RangeError(`unknown task filter: ${filter}`);
    }
    this.selectedTaskFilter = filter;
  }
}

/** Edges of the selected task plus their incident nodes; "all" is the union. */
export function filteredGraph(
  graph: GlobalViewGraph,
  filter: TaskFilter,
): GlobalViewGraph {
  if (filter === "all") return graph;
  const edges = graph.edges.filter((edge) => edge.task === filter);
  const incident = new Set<string>();
  for (const edge of edges) {
    incident.add(edge.source);
    incident.add(edge.target);
  }
  return { nodes: graph.nodes.filter((node) => incident.has(node.id)), edges };
}

export function availableTasks(graph: GlobalViewGraph): string[] {
  const seen: string[] = [];
  for (const edge of graph.edges) {
    if (!seen.includes(edge.task)) seen.push(edge.task);
  }
  return seen;
}

/** Monotone tickets so late responses to superseded requests are dropped. */
export class RequestSequencer {
  private counter = 0;

  begin(): number {
    return ++this.counter;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.counter;
  }
}
