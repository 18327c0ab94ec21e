/** Application shell: owns the DOM, the store, and all service calls.
 * Views render from state into their panels; interactions funnel into
 * the store's shared selection, and every data fetch is cancellable so
 * a superseding interaction aborts the one in flight.
 */

import { ApiClient, ApiError } from "./api";
import { Store, initialState } from "./state";
import type {
  AlignResponse,
  BinsResponse,
  DatasetInfo,
  DifferenceResponse,
  ProjectionPayload,
} from "./types";
import { idsForLasso, renderDetail } from "./views/detail";
import { idsForOuterClick, renderDifference } from "./views/difference";
import { idsForHexClick, renderClassLegend, renderHexMap } from "./views/hexmap";
import { idsForRowClick, renderGroupedTable, renderTable } from "./views/table";
import { renderSpatial } from "./views/spatial";

interface Panels {
  hexmap: HTMLElement;
  detail: HTMLElement;
  difference: HTMLElement;
  table: HTMLElement;
  spatial: HTMLElement;
  notices: HTMLElement;
  legend: HTMLElement;
}

interface TableControls {
  filters: string[];
  sort: string | null;
  descending: boolean;
  page: number;
  grouped: boolean;
  groupFeature: string;
}

class Aborter {
  private controllers = new Map<string, AbortController>();

  next(key: string): AbortSignal {
    this.controllers.get(key)?.abort();
    const controller = new AbortController();
    this.controllers.set(key, controller);
    return controller.signal;
  }
}

function notice(panels: Panels, message: string): void {
  const item = document.createElement("div");
  item.className = "notice";
  item.textContent = message;
  panels.notices.appendChild(item);
  setTimeout(() => item.remove(), 6000);
}

function reportError(panels: Panels, context: string, error: unknown): void {
  if (error instanceof DOMException && error.name === "AbortError") return;
  const detail =
    error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
  notice(panels, `${context}: ${detail}`);
}

export class App {
  private readonly api: ApiClient;

  private readonly panels: Panels;

  private readonly store: Store;

  private readonly aborter = new Aborter();

  private sessionId = "";

  private info: DatasetInfo | null = null;

  private projection: ProjectionPayload | null = null;

  private bins: BinsResponse | null = null;

  private differenceModel: DifferenceResponse | null = null;

  private alignment: AlignResponse | null = null;

  private tableControls: TableControls = {
    filters: [],
    sort: null,
    descending: false,
    page: 0,
    grouped: false,
    groupFeature: "molecular_weight",
  };

  constructor(api: ApiClient, panels: Panels, store: Store) {
    this.api = api;
    this.panels = panels;
    this.store = store;
  }

  static async boot(root: HTMLElement, api: ApiClient): Promise<App> {
    const datasets = await api.datasets();
    if (datasets.length === 0) throw new Error("service exposes no datasets");
    const info = datasets[0];
    const representation = info.projections[0] ?? info.representations[0];
    const session = await api.createSession(info.name);
    const panels: Panels = {
      hexmap: root.querySelector("#hexmap-panel") as HTMLElement,
      detail: root.querySelector("#detail-panel") as HTMLElement,
      difference: root.querySelector("#difference-panel") as HTMLElement,
      table: root.querySelector("#table-panel") as HTMLElement,
      spatial: root.querySelector("#spatial-panel") as HTMLElement,
      notices: root.querySelector("#notices") as HTMLElement,
      legend: root.querySelector("#legend") as HTMLElement,
    };
    const store = new Store(initialState(info.name, representation, 5));
    const app = new App(api, panels, store);
    app.info = info;
    app.sessionId = session.session_id;
    app.populateSelectors(root);
    app.wireControls(root);
    store.subscribe(() => app.renderAll());
    await app.refreshProjection();
    await Promise.all([app.refreshBins(), app.refreshTable()]);
    app.renderAll();
    return app;
  }

  private state() {
    return this.store.getState();
  }

  private populateSelectors(root: HTMLElement): void {
    if (!this.info) return;
    const fill = (id: string, values: string[], selected: string): void => {
      const select = root.querySelector(id) as HTMLSelectElement | null;
      if (!select) return;
      select.innerHTML = values
        .map(
          (value) =>
            `<option value="${value}"${value === selected ? " selected" : ""}>${value}</option>`,
        )
        .join("");
    };
    const current = this.state().representation;
    fill("#representation", this.info.projections, current);
    fill("#compare-representation", this.info.projections, current);
    const features = [
      "",
      ...this.info.targets.map((t) => `activity:${t}`),
      "molecular_weight",
      "h_bond_donors",
      "h_bond_acceptors",
      "ro5_violations",
    ];
    fill("#color-feature", features, "");
  }

  /* ---------------- data refresh ---------------- */

  private async refreshProjection(): Promise<void> {
    const { dataset, representation } = this.state();
    try {
      this.projection = await this.api.projection(
        dataset,
        representation,
        this.aborter.next("projection"),
      );
    } catch (error) {
      this.projection = null;
      reportError(this.panels, "projection", error);
    }
  }

  private async refreshBins(): Promise<void> {
    const { dataset, representation, radius, colorFeature } = this.state();
    try {
      this.bins = await this.api.bins(
        dataset,
        representation,
        radius,
        colorFeature,
        this.aborter.next("bins"),
      );
    } catch (error) {
      this.bins = null;
      reportError(this.panels, "bins", error);
    }
  }

  private async refreshTable(): Promise<void> {
    const { dataset } = this.state();
    const controls = this.tableControls;
    try {
      if (controls.grouped) {
        const grouped = await this.api.tableGroups(
          dataset,
          {
            representation: this.state().representation,
            radius: this.state().radius,
            feature: controls.groupFeature,
            filters: controls.filters,
          },
          this.aborter.next("table"),
        );
        this.panels.table.innerHTML = renderGroupedTable(
          grouped.groups,
          this.state().selection.ids,
        );
        return;
      }
      const table = await this.api.table(
        dataset,
        {
          filters: controls.filters,
          sort: controls.sort ?? undefined,
          descending: controls.descending,
          page: controls.page,
        },
        this.aborter.next("table"),
      );
      const columns = table.rows.length > 0
        ? Object.keys(table.rows[0]).filter((c) => c !== "id")
        : [];
      this.panels.table.innerHTML = renderTable(table.rows, {
        columns,
        selection: this.state().selection.ids,
        added: this.state().added,
        sort: controls.sort,
        descending: controls.descending,
      });
    } catch (error) {
      reportError(this.panels, "table", error);
    }
  }

  private async refreshDifference(): Promise<void> {
    const state = this.state();
    const ids = [...state.selection.ids].filter(
      (id) => !state.added.some((a) => a.id === id),
    );
    if (ids.length === 0 || !state.comparisonOpen) {
      this.differenceModel = null;
      this.panels.difference.innerHTML = renderDifference(
        {
          dataset: state.dataset,
          reference: state.representation,
          compared: state.compareRepresentation,
          radius: state.radius,
          outer_bins: [],
          inner_hexes: [],
          artifact_version: 0,
        },
        { radius: state.radius, selection: state.selection.ids, added: state.added },
      );
      return;
    }
    try {
      this.differenceModel = await this.api.difference(
        state.dataset,
        state.representation,
        state.compareRepresentation,
        state.radius,
        ids,
        this.aborter.next("difference"),
      );
      this.panels.difference.innerHTML = renderDifference(this.differenceModel, {
        radius: state.radius,
        selection: state.selection.ids,
        added: state.added,
      });
    } catch (error) {
      reportError(this.panels, "difference", error);
    }
  }

  private async refreshAlignment(): Promise<void> {
    const state = this.state();
    const addedIds = new Set(state.added.map((a) => a.id));
    const alignable = [...state.selection.ids].filter((id) => !addedIds.has(id));
    if (alignable.length < 2) {
      this.alignment = null;
      this.renderSpatialPanel();
      return;
    }
    try {
      this.alignment = await this.api.align(
        state.dataset,
        alignable,
        this.aborter.next("align"),
      );
    } catch (error) {
      this.alignment = null;
      reportError(this.panels, "3D alignment", error);
    }
    this.renderSpatialPanel();
  }

  /* ---------------- rendering ---------------- */

  private renderSpatialPanel(): void {
    const state = this.state();
    this.panels.spatial.innerHTML = renderSpatial(this.alignment, {
      ...state.spatial,
      selection: state.selection.ids,
      added: state.added,
    });
  }

  renderAll(): void {
    const state = this.state();
    if (this.bins) {
      this.panels.hexmap.innerHTML = renderHexMap(this.bins.bins, {
        radius: state.radius,
        representation: state.representation,
        colorFeature: state.colorFeature,
        selection: state.selection.ids,
        added: state.added,
        hover: state.hover,
      });
    }
    if (this.projection) {
      this.panels.detail.innerHTML = renderDetail(this.projection, {
        radius: state.radius,
        representation: state.representation,
        selection: state.selection.ids,
        added: state.added,
      });
    }
    this.panels.legend.innerHTML = renderClassLegend();
    this.renderSpatialPanel();
  }

  /* ---------------- interactions ---------------- */

  private setSelection(ids: Set<string>, provenance: string): void {
    this.store.setSelection(ids, provenance);
    void this.api
      .saveSelection(this.sessionId, "current", ids, provenance)
      .catch((error) => reportError(this.panels, "save selection", error));
    void this.refreshDifference();
    void this.refreshAlignment();
    void this.refreshTable();
  }

  private wireControls(root: HTMLElement): void {
    this.panels.hexmap.addEventListener("click", (event) => {
      const target = (event.target as Element).closest("[data-hex],[data-id]");
      if (!target || !this.bins) return;
      if (target.hasAttribute("data-hex")) {
        const [q, r] = (target.getAttribute("data-hex") as string)
          .split(",")
          .map(Number);
        this.setSelection(
          idsForHexClick(this.bins.bins, q, r, this.state().selection.ids, event.shiftKey),
          "hexmap",
        );
      } else {
        this.setSelection(
          idsForRowClick(
            this.state().selection.ids,
            target.getAttribute("data-id") as string,
            event.shiftKey,
          ),
          "hexmap",
        );
      }
    });

    this.panels.hexmap.addEventListener("pointermove", (event) => {
      const target = (event.target as Element).closest("[data-hex]");
      this.store.setHover(
        target ? { kind: "hex", key: target.getAttribute("data-hex") as string } : null,
      );
    });

    this.panels.difference.addEventListener("click", (event) => {
      const target = (event.target as Element).closest(".outer[data-hex]");
      if (!target || !this.differenceModel) return;
      const [q, r] = (target.getAttribute("data-hex") as string).split(",").map(Number);
      this.setSelection(
        idsForOuterClick(
          this.differenceModel,
          q,
          r,
          this.state().selection.ids,
          event.shiftKey,
        ),
        "difference",
      );
    });

    this.panels.table.addEventListener("click", (event) => {
      const row = (event.target as Element).closest("tr[data-id]");
      if (row) {
        this.setSelection(
          idsForRowClick(
            this.state().selection.ids,
            row.getAttribute("data-id") as string,
            event.shiftKey,
          ),
          "table",
        );
        return;
      }
      const header = (event.target as Element).closest("th[data-column]");
      if (header) {
        const column = header.getAttribute("data-column") as string;
        if (this.tableControls.sort === column) {
          this.tableControls.descending = !this.tableControls.descending;
        } else {
          this.tableControls.sort = column;
          this.tableControls.descending = false;
        }
        void this.refreshTable();
      }
    });

    this.panels.spatial.addEventListener("click", (event) => {
      const group = (event.target as Element).closest("g[data-id]");
      if (!group) return;
      this.setSelection(
        idsForRowClick(
          this.state().selection.ids,
          group.getAttribute("data-id") as string,
          event.shiftKey,
        ),
        "spatial",
      );
    });

    this.wireLasso();
    this.wireForm(root);
  }

  /** Lasso in the Detail view: pointer path in client pixels is mapped
   * through the svg viewBox into map coordinates.
   */
  private wireLasso(): void {
    let path: [number, number][] = [];
    let active = false;

    const toMapCoords = (event: PointerEvent): [number, number] | null => {
      const svg = this.panels.detail.querySelector("svg.detail");
      if (!svg) return null;
      const viewBox = (svg.getAttribute("viewBox") as string).split(" ").map(Number);
      const rect = svg.getBoundingClientRect();
      if (rect.width === 0 || rect.height === 0) return null;
      const x = viewBox[0] + ((event.clientX - rect.left) / rect.width) * viewBox[2];
      const y = viewBox[1] + ((event.clientY - rect.top) / rect.height) * viewBox[3];
      return [x, y];
    };

    this.panels.detail.addEventListener("pointerdown", (event) => {
      if (!event.shiftKey) return;
      const point = toMapCoords(event);
      if (!point) return;
      active = true;
      path = [point];
    });
    this.panels.detail.addEventListener("pointermove", (event) => {
      if (!active) return;
      const point = toMapCoords(event);
      if (point) path.push(point);
    });
    this.panels.detail.addEventListener("pointerup", () => {
      if (!active || !this.projection) {
        active = false;
        return;
      }
      active = false;
      const state = this.state();
      const inside = idsForLasso(
        this.projection,
        state.added,
        state.representation,
        path,
      );
      if (inside.size > 0) {
        this.setSelection(inside, "lasso");
        void this.api
          .lassoSelection(this.sessionId, "current", path, state.representation)
          .catch((error) => reportError(this.panels, "lasso", error));
      }
      path = [];
    });
  }

  private wireForm(root: HTMLElement): void {
    const radius = root.querySelector("#radius") as HTMLInputElement | null;
    radius?.addEventListener("change", () => {
      this.store.setRadius(Number(radius.value));
      void this.refreshBins().then(() => this.renderAll());
      void this.refreshDifference();
    });

    const representation = root.querySelector("#representation") as HTMLSelectElement | null;
    representation?.addEventListener("change", () => {
      this.store.setRepresentation(representation.value);
      void this.refreshProjection().then(() => this.refreshBins()).then(() => {
        this.renderAll();
        void this.refreshDifference();
      });
    });

    const compare = root.querySelector("#compare-representation") as HTMLSelectElement | null;
    compare?.addEventListener("change", () => {
      this.store.setCompareRepresentation(compare.value);
      void this.refreshDifference();
    });

    const colorFeature = root.querySelector("#color-feature") as HTMLSelectElement | null;
    colorFeature?.addEventListener("change", () => {
      this.store.setColorFeature(colorFeature.value || null);
      void this.refreshBins().then(() => this.renderAll());
    });

    const filterInput = root.querySelector("#filter") as HTMLInputElement | null;
    filterInput?.addEventListener("change", () => {
      this.tableControls.filters = filterInput.value
        .split(";")
        .map((f) => f.trim())
        .filter((f) => f.length > 0);
      this.tableControls.page = 0;
      void this.refreshTable();
    });

    const addForm = root.querySelector("#add-compound") as HTMLFormElement | null;
    addForm?.addEventListener("submit", (event) => {
      event.preventDefault();
      const smiles = (addForm.querySelector("[name=smiles]") as HTMLInputElement).value;
      if (!smiles) return;
      void this.api
        .addCompound(this.sessionId, smiles)
        .then((response) => {
          this.store.addCompound(response);
          if (response.unavailable.length > 0) {
            notice(
              this.panels,
              `not placeable on: ${response.unavailable.join(", ")}`,
            );
          }
          void this.refreshTable();
        })
        .catch((error) => reportError(this.panels, "add compound", error));
    });

    const exportButton = root.querySelector("#export") as HTMLButtonElement | null;
    exportButton?.addEventListener("click", () => {
      const ids = [...this.state().selection.ids];
      if (ids.length === 0) return;
      void this.api
        .exportSdf(this.state().dataset, ids)
        .then((text) => {
          const blob = new Blob([text], { type: "chemical/x-mdl-sdfile" });
          const anchor = document.createElement("a");
          anchor.href = URL.createObjectURL(blob);
          anchor.download = "selection.sdf";
          anchor.click();
          URL.revokeObjectURL(anchor.href);
        })
        .catch((error) => reportError(this.panels, "export", error));
    });

    const comparisonToggle = root.querySelector("#toggle-comparison") as HTMLButtonElement | null;
    comparisonToggle?.addEventListener("click", () => {
      const open = !this.state().comparisonOpen;
      this.store.setComparisonOpen(open);
      (root.querySelector("#comparison-row") as HTMLElement).style.display = open
        ? ""
        : "none";
      if (open) void this.refreshDifference();
    });

    for (const [id, key] of [
      ["#show-hydrogens", "showHydrogens"],
      ["#invert-opacity", "inverted"],
      ["#common-only", "commonOnly"],
    ] as const) {
      const box = root.querySelector(id) as HTMLInputElement | null;
      box?.addEventListener("change", () => {
        this.store.setSpatial({ [key]: box.checked });
      });
    }
    for (const [id, key] of [
      ["#atom-scale", "atomScale"],
      ["#bond-scale", "bondScale"],
      ["#global-opacity", "globalOpacity"],
    ] as const) {
      const slider = root.querySelector(id) as HTMLInputElement | null;
      slider?.addEventListener("input", () => {
        this.store.setSpatial({ [key]: Number(slider.value) });
      });
    }
  }
}

declare global {
  interface Window {
    chemmapApp?: Promise<App>;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const root = document.getElementById("app") as HTMLElement;
  const api = new ApiClient(
    root.dataset.apiBase ?? "",
    (url, init) => window.fetch(url, init),
  );
  window.chemmapApp = App.boot(root, api).catch((error) => {
    root.textContent = `failed to start: ${error}`;
    throw error;
  });
}
