import { beforeEach, describe, expect, it } from "vitest";

import { parseGlobalView, parseLayers, type FetchLike } from "../src/api";
import { initApp } from "../src/app";
import { renderGlobalView, strokeWidth } from "../src/render";
import { ViewState } from "../src/state";
import {
  PRODUCT,
  census,
  gvAll,
  jsonResponse,
  layersFixture,
  mount,
  nodeElement,
  settle,
  stubFetch,
  typeDetails,
} from "./helpers";

beforeEach(() => {
  document.body.replaceChildren();
});

describe("edge weight rendering", () => {
  it("gives heavier edges strictly wider strokes", () => {
    expect(strokeWidth(1)).toBeLessThan(strokeWidth(3));
    expect(strokeWidth(3)).toBeLessThan(strokeWidth(10));

    const root = mount();
    const graph = parseGlobalView({
      nodes: [
        { id: "a", label: "A", granularity: "TypeLevel" },
        { id: "b", label: "B", granularity: "TypeLevel" },
        { id: "c", label: "C", granularity: "TypeLevel" },
      ],
      edges: [
        { source: "a", target: "b", task: "t", color: "#123456", weight: 1 },
        { source: "a", target: "c", task: "t", color: "#123456", weight: 3 },
      ],
    });
    renderGlobalView(root, graph, { a: 0, b: 1, c: 1 }, new ViewState(["t"]), {
      onSelect: () => {},
      onDiveIn: () => {},
    });
    const widths = [...root.querySelectorAll(".gv-edge")].map(
      (edge) => Number(edge.getAttribute("stroke-width")));
    expect(widths).toHaveLength(2);
    expect(widths[0]!).toBeLessThan(widths[1]!);
  });
});

describe("layer placement", () => {
  it("draws a lower-numbered layer strictly above higher ones", async () => {
    const root = mount();
    await initApp(root, { productId: PRODUCT, fetchFn: stubFetch([]) });

    const byLayer = new Map<number, number[]>();
    for (const node of root.querySelectorAll(".gv-node")) {
      const layer = Number(node.getAttribute("data-layer"));
      const y = Number(node.getAttribute("data-y"));
      const ys = byLayer.get(layer);
      if (ys === undefined) byLayer.set(layer, [y]);
      else ys.push(y);
    }
    const layers = [...byLayer.keys()].sort((a, b) => a - b);
    expect(layers.length).toBeGreaterThan(1);
    for (let i = 1; i < layers.length; i++) {
      const above = Math.max(...byLayer.get(layers[i - 1]!)!);
      const below = Math.min(...byLayer.get(layers[i]!)!);
      expect(above).toBeLessThan(below);
    }
  });
});

describe("degenerate payloads", () => {
  it("renders an empty canvas with the filter panel for an empty graph", async () => {
    const root = mount();
    const fetchFn = stubFetch([], {
      [`/api/products/${PRODUCT}/globalview`]: { nodes: [], edges: [] },
      [`/api/products/${PRODUCT}/globalview/layers`]: { layers: {} },
    });
    await initApp(root, { productId: PRODUCT, fetchFn });

    expect(census(root)).toEqual({ nodes: 0, edges: 0 });
    expect(root.querySelector(".gv-canvas")).not.toBeNull();
    expect(root.querySelector('input[name="task-filter"][value="all"]'))
      .not.toBeNull();
    expect(root.querySelector(".gv-banner")).toBeNull();
  });

  it("shows an error banner on malformed graph payloads", async () => {
    const root = mount();
    const fetchFn = stubFetch([], {
      [`/api/products/${PRODUCT}/globalview`]: { nodes: 7 },
    });
    await initApp(root, { productId: PRODUCT, fetchFn });

    const banner = root.querySelector(".gv-banner");
    expect(banner).not.toBeNull();
    expect(banner?.textContent).toContain("malformed");
    expect(root.querySelector(".gv-canvas")).toBeNull();
  });

  it("rejects layer payloads with fractional indexes", () => {
    expect(() => parseLayers({ layers: { a: 1.5 } })).toThrow();
    expect(parseLayers({ layers: { a: 2 } })).toEqual({ a: 2 });
  });
});

describe("dive-in failures and races", () => {
  it("surfaces a 404 as an inline notice", async () => {
    const root = mount();
    const ghost = gvAll.nodes.find((node) => node.id !== typeDetails.id)!;
    await initApp(root, { productId: PRODUCT, fetchFn: stubFetch([]) });

    nodeElement(root, ghost.id).dispatchEvent(
      new MouseEvent("dblclick", { bubbles: true }));
    await settle();

    const notice = root.querySelector(".gv-panel-error");
    expect(notice).not.toBeNull();
    expect(notice?.textContent).toContain("no longer exists");
  });

  it("discards a stale response that resolves after a newer request", async () => {
    const root = mount();
    const first = gvAll.nodes.find((node) => node.label === "JabRefMain")!;
    const second = gvAll.nodes.find((node) => node.label === "URLUtil")!;
    const pending = new Map<string, (response: Response) => void>();
    const fetchFn: FetchLike = (url) => {
      if (url.startsWith("/api/types/")) {
        return new Promise((resolve) => pending.set(url, resolve));
      }
      if (url.endsWith("/layers")) {
        return Promise.resolve(jsonResponse(layersFixture));
      }
      return Promise.resolve(jsonResponse(gvAll));
    };
    await initApp(root, { productId: PRODUCT, fetchFn });

    const details = (node: { id: string; label: string }) => ({
      id: node.id,
      simple_name: node.label,
      full_name: `net.sf.jabref.${node.label}`,
      source_path: `net/sf/jabref/${node.label}.java`,
      has_source: true,
      hot_lines: [],
    });
    nodeElement(root, first.id).dispatchEvent(new MouseEvent("dblclick"));
    nodeElement(root, second.id).dispatchEvent(new MouseEvent("dblclick"));

    pending.get(`/api/types/${second.id}`)!(jsonResponse(details(second)));
    await settle();
    pending.get(`/api/types/${first.id}`)!(jsonResponse(details(first)));
    await settle();

    expect(root.querySelector(".gv-type-panel h2")?.textContent)
      .toBe(`net.sf.jabref.${second.label}`);
  });
});

describe("pan and zoom", () => {
  it("dragging pans and wheeling rescales the viewport", async () => {
    const root = mount();
    const app = await initApp(root, { productId: PRODUCT, fetchFn: stubFetch([]) });
    const svg = root.querySelector(".gv-canvas")!;
    const viewport = root.querySelector(".gv-viewport")!;
    expect(viewport.getAttribute("transform")).toBe("translate(0 0) scale(1)");

    svg.dispatchEvent(new MouseEvent("mousedown", { button: 0, clientX: 10, clientY: 10 }));
    svg.dispatchEvent(new MouseEvent("mousemove", { clientX: 35, clientY: 4 }));
    svg.dispatchEvent(new MouseEvent("mouseup"));
    expect(app.state.transform).toEqual({ x: 25, y: -6, k: 1 });
    expect(viewport.getAttribute("transform")).toBe("translate(25 -6) scale(1)");

    svg.dispatchEvent(new WheelEvent("wheel", { deltaY: -120 }));
    expect(app.state.transform.k).toBeGreaterThan(1);
  });
});
