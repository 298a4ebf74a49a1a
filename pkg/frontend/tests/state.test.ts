import { describe, expect, it } from "vitest";

import { parseGlobalView } from "../src/api";
import {
  RequestSequencer,
  ViewState,
  availableTasks,
  filteredGraph,
} from "../src/state";
import gv318 from "./fixtures/globalview-318.json";
import gv667 from "./fixtures/globalview-667.json";
import { gvAll } from "./helpers";

const graph = parseGlobalView(gvAll);
const task318 = gv318.edges[0]!.task;
const task667 = gv667.edges[0]!.task;

describe("ViewState", () => {
  it("accepts all plus every available task and rejects anything else", () => {
    const state = new ViewState([task318, task667]);
    state.setTaskFilter(task318);
    expect(state.selectedTaskFilter).toBe(task318);
    state.setTaskFilter("all");
    expect(state.selectedTaskFilter).toBe("all");
    expect(() => state.setTaskFilter("bogus")).toThrow(RangeError);
    expect(state.selectedTaskFilter).toBe("all");
  });
});

describe("filteredGraph", () => {
  it("reproduces the server's per-task subgraph by set difference", () => {
    for (const [task, expected] of [[task318, gv318], [task667, gv667]] as const) {
      const sub = filteredGraph(graph, task);
      expect(new Set(sub.nodes.map((n) => n.id)))
        .toEqual(new Set(expected.nodes.map((n) => n.id)));
      expect(sub.edges.length).toBe(expected.edges.length);
      expect(sub.edges.every((edge) => edge.task === task)).toBe(true);
    }
  });

  it("returns the union for all and nothing for an edgeless task", () => {
    expect(filteredGraph(graph, "all")).toBe(graph);
    const empty = filteredGraph(graph, "no-edges-here");
    expect(empty.nodes).toEqual([]);
    expect(empty.edges).toEqual([]);
  });
});

describe("availableTasks", () => {
  it("deduplicates tasks in first-seen edge order", () => {
    const tasks = availableTasks(graph);
    expect(new Set(tasks)).toEqual(new Set([task318, task667]));
    expect(tasks.length).toBe(2);
  });
});

describe("RequestSequencer", () => {
  it("marks only the latest ticket as current", () => {
    const seq = new RequestSequencer();
    const first = seq.begin();
    const second = seq.begin();
    expect(seq.isCurrent(first)).toBe(false);
    expect(seq.isCurrent(second)).toBe(true);
  });
});
