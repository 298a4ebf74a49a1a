/** DOM census against the server's own GVJSON for every task filter. */

import { beforeEach, describe, expect, it } from "vitest";

import { initApp } from "../src/app";
import gv318 from "./fixtures/globalview-318.json";
import gv667 from "./fixtures/globalview-667.json";
import {
  PRODUCT,
  census,
  gvAll,
  mount,
  nodeElement,
  selectFilter,
  settle,
  stubFetch,
  typeDetails,
} from "./helpers";

const task318 = gv318.edges[0]!.task;
const task667 = gv667.edges[0]!.task;

beforeEach(() => {
  document.body.replaceChildren();
});

describe("rendered census equals GVJSON counts", () => {
  it("matches for the all-tasks view and for each task filter", async () => {
    const root = mount();
    await initApp(root, { productId: PRODUCT, fetchFn: stubFetch([]) });

    expect(census(root)).toEqual(
      { nodes: gvAll.nodes.length, edges: gvAll.edges.length });

    selectFilter(root, task318);
    expect(census(root)).toEqual(
      { nodes: gv318.nodes.length, edges: gv318.edges.length });

    selectFilter(root, task667);
    expect(census(root)).toEqual(
      { nodes: gv667.nodes.length, edges: gv667.edges.length });

    selectFilter(root, "all");
    expect(census(root)).toEqual(
      { nodes: gvAll.nodes.length, edges: gvAll.edges.length });
  });

  it("shows only the selected task's edges after filtering", async () => {
    const root = mount();
    await initApp(root, { productId: PRODUCT, fetchFn: stubFetch([]) });
    selectFilter(root, task318);
    const tasks = [...root.querySelectorAll(".gv-edge")].map(
      (edge) => edge.getAttribute("data-task"));
    expect(tasks.length).toBeGreaterThan(0);
    expect(new Set(tasks)).toEqual(new Set([task318]));
  });
});

describe("dive-in", () => {
  it("double-click fetches the type once and shows its source path", async () => {
    const root = mount();
    const calls: string[] = [];
    await initApp(root, { productId: PRODUCT, fetchFn: stubFetch(calls) });

    nodeElement(root, typeDetails.id).dispatchEvent(
      new MouseEvent("dblclick", { bubbles: true }));
    await settle();

    const typeCalls = calls.filter((url) => url.startsWith("/api/types/"));
    expect(typeCalls).toEqual([`/api/types/${typeDetails.id}`]);

    const path = root.querySelector(".gv-source-path");
    expect(path?.textContent).toBe(typeDetails.source_path);
    const lines = [...root.querySelectorAll(".gv-hot-lines li")].map(
      (item) => (item as HTMLElement).dataset.line);
    expect(lines).toContain("969");
  });

  it("single click selects without fetching", async () => {
    const root = mount();
    const calls: string[] = [];
    await initApp(root, { productId: PRODUCT, fetchFn: stubFetch(calls) });

    const node = nodeElement(root, typeDetails.id);
    node.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await settle();

    expect(node.classList.contains("gv-selected")).toBe(true);
    expect(calls.filter((url) => url.startsWith("/api/types/"))).toEqual([]);
  });
});
