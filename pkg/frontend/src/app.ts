/** Wires fetch, state, and rendering into one page; main.ts only boots it. */

import {
  type FetchLike,
  MalformedPayload,
  NotFound,
  fetchGlobalView,
  fetchLayers,
  fetchTypeDetails,
  type GlobalViewGraph,
  type LayerAssignment,
} from "./api";
import {
  clearBanner,
  renderErrorBanner,
  renderGlobalView,
  renderTypePanel,
  renderTypePanelError,
} from "./render";
import {
  RequestSequencer,
  ViewState,
  availableTasks,
  filteredGraph,
} from "./state";

export interface AppOptions {
  productId: string;
  fetchFn?: FetchLike;
}

export interface App {
  state: ViewState;
  refresh(): void;
}

function buildShell(root: HTMLElement): {
  banner: HTMLElement;
  filters: HTMLFormElement;
  canvas: HTMLElement;
  panel: HTMLElement;
} {
  root.replaceChildren();
  const banner = document.createElement("div");
  banner.className = "gv-banner-area";
  const filters = document.createElement("form");
  filters.className = "gv-filter-panel";
  const canvas = document.createElement("div");
  canvas.className = "gv-canvas-host";
  const panel = document.createElement("aside");
  panel.className = "gv-type-panel";
  root.append(banner, filters, canvas, panel);
  return { banner, filters, canvas, panel };
}

function buildFilterControls(
  filters: HTMLFormElement,
  tasks: string[],
  colors: Map<string, string>,
  onChange: (filter: string) => void,
): void {
  filters.replaceChildren();
  const options: Array<readonly [string, string]> = [
    ["all", "All tasks"],
    ...tasks.map((task): readonly [string, string] =>
      [task, `Task ${task.slice(0, 8)}`]),
  ];
  for (const [value, label] of options) {
    const wrapper = document.createElement("label");
    wrapper.className = "gv-filter-option";
    const input = document.createElement("input");
    input.type = "radio";
    input.name = "task-filter";
    input.value = value;
    input.checked = value === "all";
    input.addEventListener("change", () => {
      if (input.checked) onChange(value);
    });
    wrapper.appendChild(input);
    const color = colors.get(value);
    if (color !== undefined) {
      const swatch = document.createElement("span");
      swatch.className = "gv-swatch";
      swatch.style.backgroundColor = color;
      wrapper.appendChild(swatch);
    }
    wrapper.appendChild(document.createTextNode(label));
    filters.appendChild(wrapper);
  }
}

export async function initApp(root: HTMLElement, options: AppOptions): Promise<App> {
  const fetchFn: FetchLike =
    options.fetchFn ?? ((url) => window.fetch(url));
  const shell = buildShell(root);
  const typeRequests = new RequestSequencer();

  let graph: GlobalViewGraph;
  let layers: LayerAssignment;
  let state = new ViewState();
  const app: App = {
    get state() {
      return state;
    },
    refresh() {},
  };

  try {
    [graph, layers] = await Promise.all([
      fetchGlobalView(fetchFn, options.productId),
      fetchLayers(fetchFn, options.productId),
    ]);
  } catch (error) {
    const reason = error instanceof MalformedPayload
      ? `malformed graph payload: ${error.message}`
      : `could not load the global view: ${String(error)}`;
    renderErrorBanner(shell.banner, reason);
    buildFilterControls(shell.filters, [], new Map(), () => {});
    return app;
  }

  const tasks = availableTasks(graph);
  state = new ViewState(tasks);

  const diveIn = async (nodeId: string): Promise<void> => {
    const ticket = typeRequests.begin();
    try {
      const details = await fetchTypeDetails(fetchFn, nodeId);
      if (!typeRequests.isCurrent(ticket)) return;
      renderTypePanel(shell.panel, details);
    } catch (error) {
      if (!typeRequests.isCurrent(ticket)) return;
      renderTypePanelError(
        shell.panel,
        error instanceof NotFound
          ? "this type no longer exists on the server"
          : `could not load type details: ${String(error)}`);
    }
  };

  const refresh = (): void => {
    clearBanner(shell.banner);
    renderGlobalView(
      shell.canvas,
      filteredGraph(graph, state.selectedTaskFilter),
      layers,
      state,
      {
        onSelect: () => {},
        onDiveIn: (nodeId) => {
          void diveIn(nodeId);
        },
      });
  };
  app.refresh = refresh;

  const colors = new Map<string, string>();
  for (const edge of graph.edges) {
    if (!colors.has(edge.task)) colors.set(edge.task, edge.color);
  }
  buildFilterControls(shell.filters, tasks, colors, (filter) => {
    state.setTaskFilter(filter);
    refresh();
  });

  refresh();
  return app;
}
