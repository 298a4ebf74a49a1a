/** Typed access to the two REST payloads this client consumes. */

export interface GvNode {
  id: string;
  label: string;
  granularity: string;
}

export interface GvEdge {
  source: string;
  target: string;
  task: string;
  color: string;
  weight: number;
}

export interface GlobalViewGraph {
  nodes: GvNode[];
  edges: GvEdge[];
}

/** Node id to layer index; starting points sit in layer 0. */
export type LayerAssignment = Record<string, number>;

export interface HotLine {
  line_number: number;
  breakpoint_count: number;
}

export interface TypeDetails {
  id: string;
  simple_name: string;
  full_name: string;
  source_path: string | null;
  has_source: boolean;
  hot_lines: HotLine[];
}

export class MalformedPayload extends Error {}

export class RequestFailed extends Error {
  constructor(readonly status: number, url: string) {
    super(`request failed with ${status}: ${url}`);
  }
}

export class NotFound extends RequestFailed {}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function asString(value: unknown, what: string): string {
  if (typeof value !== "string") {
    throw new MalformedPayload(`${what} must be a string`);
  }
  return value;
}

function asCount(value: unknown, what: string): number {
  if (typeof value !== "number" || !Number.isFinite(value) || value < 1) {
    throw new MalformedPayload(`${what} must be a positive number`);
  }
  return value;
}

export function parseGlobalView(data: unknown): GlobalViewGraph {
  if (!isRecord(data) || !Array.isArray(data.nodes) || !Array.isArray(data.edges)) {
    throw new MalformedPayload("graph payload needs nodes and edges arrays");
  }
  const nodes = data.nodes.map((raw): GvNode => {
    if (!isRecord(raw)) throw new MalformedPayload("node must be an object");
    return {
      id: asString(raw.id, "node id"),
      label: asString(raw.label, "node label"),
      granularity: asString(raw.granularity, "node granularity"),
    };
  });
  const known = new Set(nodes.map((n) => n.id));
  const edges = data.edges.map((raw): GvEdge => {
    if (!isRecord(raw)) throw new MalformedPayload("edge must be an object");
    const edge = {
      source: asString(raw.source, "edge source"),
      target: asString(raw.target, "edge target"),
      task: asString(raw.task, "edge task"),
      color: asString(raw.color, "edge color"),
      weight: asCount(raw.weight, "edge weight"),
    };
    if (!known.has(edge.source) || !known.has(edge.target)) {
      throw new MalformedPayload("edge endpoint is not a listed node");
    }
    return edge;
  });
  return { nodes, edges };
}

export function parseLayers(data: unknown): LayerAssignment {
  if (!isRecord(data) || !isRecord(data.layers)) {
    throw new MalformedPayload("layer payload needs a layers object");
  }
  const layers: LayerAssignment = {};
  for (const [node, layer] of Object.entries(data.layers)) {
    if (typeof layer !== "number" || !Number.isInteger(layer) || layer < 0) {
      throw new MalformedPayload("layer index must be a non-negative integer");
    }
    layers[node] = layer;
  }
  return layers;
}

export function parseTypeDetails(data: unknown): TypeDetails {
  if (!isRecord(data) || !Array.isArray(data.hot_lines)) {
    throw new MalformedPayload("type payload needs hot_lines");
  }
  return {
    id: asString(data.id, "type id"),
    simple_name: asString(data.simple_name, "simple name"),
    full_name: asString(data.full_name, "full name"),
    source_path: data.source_path === null ? null : asString(data.source_path, "source path"),
    has_source: data.has_source === true,
    hot_lines: data.hot_lines.map((raw): HotLine => {
      if (!isRecord(raw)) throw new MalformedPayload("hot line must be an object");
      return {
        line_number: asCount(raw.line_number, "line number"),
        breakpoint_count: asCount(raw.breakpoint_count, "breakpoint count"),
      };
    }),
  };
}

export type FetchLike = (url: string) => Promise<Response>;

async function getJson(fetchFn: FetchLike, url: string): Promise<unknown> {
  const response = await fetchFn(url);
  if (response.status === 404) throw new NotFound(404, url);
  if (!response.ok) throw new RequestFailed(response.status, url);
  try {
    return await response.json();
  } catch {
    throw new MalformedPayload(`response body is not JSON: ${url}`);
  }
}

export async function fetchGlobalView(
  fetchFn: FetchLike,
  productId: string,
): Promise<GlobalViewGraph> {
  return parseGlobalView(
    await getJson(fetchFn, `/api/products/${productId}/globalview`));
}

export async function fetchLayers(
  fetchFn: FetchLike,
  productId: string,
): Promise<LayerAssignment> {
  return parseLayers(
    await getJson(fetchFn, `/api/products/${productId}/globalview/layers`));
}

export async function fetchTypeDetails(
  fetchFn: FetchLike,
  typeId: string,
): Promise<TypeDetails> {
  return parseTypeDetails(await getJson(fetchFn, `/api/types/${typeId}`));
}
