import type { FetchLike } from "../src/api";
import gvAll from "./fixtures/globalview.json";
import layersFixture from "./fixtures/layers.json";
import typeDetails from "./fixtures/type-details.json";

export { gvAll, layersFixture, typeDetails };

export const PRODUCT = "jabref";

/* Only the members api.ts reads; avoids depending on a global Response. */
export function jsonResponse(payload: unknown, status = 200): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => payload,
  } as unknown as Response;
}

export function stubFetch(
  calls: string[],
  overrides: Record<string, unknown> = {},
): FetchLike {
  return async (url: string) => {
    calls.push(url);
    if (url in overrides) return jsonResponse(overrides[url]);
    if (url === `/api/products/${PRODUCT}/globalview`) {
      return jsonResponse(gvAll);
    }
    if (url === `/api/products/${PRODUCT}/globalview/layers`) {
      return jsonResponse(layersFixture);
    }
    if (url === `/api/types/${typeDetails.id}`) {
      return jsonResponse(typeDetails);
    }
    return jsonResponse({ code: "UnknownType", message: "no such type" }, 404);
  };
}

export function mount(): HTMLElement {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return root;
}

export function census(root: HTMLElement): { nodes: number; edges: number } {
  return {
    nodes: root.querySelectorAll(".gv-node").length,
    edges: root.querySelectorAll(".gv-edge").length,
  };
}

export function selectFilter(root: HTMLElement, value: string): void {
  const input = root.querySelector<HTMLInputElement>(
    `input[name="task-filter"][value="${value}"]`);
  if (input === null) throw new Error(`no filter option for ${value}`);
  input.checked = true;
  input.dispatchEvent(new Event("change"));
}

export function nodeElement(root: HTMLElement, nodeId: string): Element {
  const el = root.querySelector(`[data-node-id="${nodeId}"]`);
  if (el === null) throw new Error(`node ${nodeId} is not rendered`);
  return el;
}

export async function settle(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}
