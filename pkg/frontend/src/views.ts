// DOM builders for the three areas: homepage, catalogue, workspace.
// All functions are pure renderers: data + handlers in, elements out;
// every mutation goes through a handler that re-fetches from the API.

import type { CatalogueRecord, SearchFilters, Session, Vocabularies } from "./api.js";
import { canEdit, legalActions, missingMandatoryFields } from "./model.js";

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    attrs: Record<string, string> = {},
    ...children: Child[]
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (key.startsWith("data-")) node.setAttribute(key, value);
        else if (key === "class") node.className = value;
        else node.setAttribute(key, value);
    }
    for (const child of children) {
        if (child === null || child === undefined) continue;
        node.append(child instanceof Node ? child : document.createTextNode(child));
    }
    return node;
}

function statusBadge(status: string): HTMLElement {
    return el("span", { class: `badge status-${status}` }, status);
}

function recordRow(record: CatalogueRecord, onOpen: (id: string) => void): HTMLElement {
    const row = el(
        "li",
        { class: "record-row", "data-record-id": record.id, "data-status": record.status },
        el("strong", {}, record.title),
        " ",
        statusBadge(record.status),
        el("div", { class: "muted" },
            `${record.caseStudy || "—"} · ${record.dataRequirement} · ${record.sourceType}`),
    );
    row.addEventListener("click", () => onOpen(record.id));
    return row;
}

export function renderLogin(onLogin: (token: string) => void): HTMLElement {
    const input = el("input", { type: "password", placeholder: "paste your access token", id: "token" });
    const button = el("button", {}, "Sign in");
    button.addEventListener("click", () => onLogin(input.value.trim()));
    return el("section", { class: "login" },
        el("h1", {}, "Mobility Data Catalogue"),
        el("p", {}, "Sign in with the bearer token you were issued."),
        input, button);
}

export function renderHomepage(
    latest: CatalogueRecord[],
    onSearch: (text: string) => void,
    onOpen: (id: string) => void,
): HTMLElement {
    const search = el("input", { type: "search", placeholder: "search data sources…", id: "home-search" });
    search.addEventListener("keydown", (event) => {
        if ((event as KeyboardEvent).key === "Enter") onSearch(search.value);
    });
    return el("section", { class: "homepage" },
        el("h2", {}, "Latest changes"),
        search,
        el("ul", { id: "latest", class: "record-list" },
            ...latest.map((record) => recordRow(record, onOpen))));
}

export interface CatalogueHandlers {
    onFilterChange: (filters: SearchFilters) => void;
    onOpen: (id: string) => void;
}

function filterSelect(
    name: string, label: string, options: string[], current: string | undefined,
    update: (value: string) => void,
): HTMLElement {
    const select = el("select", { id: `filter-${name}` },
        el("option", { value: "" }, `any ${label}`),
        ...options.map((option) =>
            Object.assign(el("option", { value: option }, option),
                current === option ? { selected: true } : {})));
    if (current) (select as HTMLSelectElement).value = current;
    select.addEventListener("change", () => update((select as HTMLSelectElement).value));
    return el("label", { class: "filter" }, label, select);
}

export function renderCatalogue(
    records: CatalogueRecord[],
    vocab: Vocabularies,
    formats: string[],
    filters: SearchFilters,
    handlers: CatalogueHandlers,
): HTMLElement {
    const set = (key: keyof SearchFilters) => (value: string) =>
        handlers.onFilterChange({ ...filters, [key]: value || undefined });
    const text = el("input", {
        type: "search", placeholder: "text search", id: "filter-text", value: filters.text ?? "",
    });
    text.addEventListener("change", () => set("text")((text as HTMLInputElement).value));

    const caseStudies = [...new Set(records.map((r) => r.caseStudy).filter(Boolean))].sort();
    return el("section", { class: "catalogue" },
        el("h2", {}, "Catalogue"),
        el("div", { class: "filters" },
            text,
            filterSelect("status", "status", vocab.status, filters.status, set("status")),
            filterSelect("caseStudy", "case study", caseStudies, filters.caseStudy, set("caseStudy")),
            filterSelect("dataRequirement", "data requirement", vocab.dataRequirement,
                filters.dataRequirement, set("dataRequirement")),
            filterSelect("format", "format", formats, filters.format, set("format"))),
        el("ul", { id: "results", class: "record-list" },
            ...records.map((record) => recordRow(record, handlers.onOpen))),
        el("p", { class: "muted" }, `${records.length} record(s)`));
}

export interface WorkspaceHandlers {
    onOpen: (id: string) => void;
    onCreate: (draft: Record<string, unknown>) => void;
}

export function renderWorkspace(
    owned: CatalogueRecord[],
    vocab: Vocabularies,
    session: Session,
    handlers: WorkspaceHandlers,
): HTMLElement {
    const section = el("section", { class: "workspace" },
        el("h2", {}, `Workspace — ${session.userId} (${session.role})`),
        el("ul", { id: "owned", class: "record-list" },
            ...owned.map((record) => recordRow(record, handlers.onOpen))));

    if (session.role !== "publisher") {
        section.append(el("p", { class: "muted" }, "Only publishers can describe new data sources."));
        return section;
    }

    const title = el("input", { id: "new-title", placeholder: "title *" });
    const description = el("textarea", { id: "new-description", placeholder: "description *" });
    const requirement = el("select", { id: "new-dataRequirement" },
        ...vocab.dataRequirement.map((term) => el("option", { value: term }, term)));
    const sourceType = el("select", { id: "new-sourceType" },
        ...vocab.sourceType.map((term) => el("option", { value: term }, term)));
    const caseStudy = el("input", { id: "new-caseStudy", placeholder: "case study" });
    const problems = el("p", { class: "error", id: "new-problems" });
    const submit = el("button", {}, "Create draft");
    submit.addEventListener("click", () => {
        const draft = {
            title: (title as HTMLInputElement).value.trim(),
            description: (description as HTMLTextAreaElement).value.trim(),
            dataRequirement: (requirement as HTMLSelectElement).value,
            sourceType: (sourceType as HTMLSelectElement).value,
            caseStudy: (caseStudy as HTMLInputElement).value.trim(),
        };
        // same mandatory list the server enforces; fail fast client-side
        const missing = missingMandatoryFields(draft);
        if (missing.length > 0) {
            problems.textContent = `missing mandatory fields: ${missing.join(", ")}`;
            return;
        }
        problems.textContent = "";
        handlers.onCreate(draft);
    });
    section.append(
        el("h3", {}, "Describe a new data source"),
        el("div", { class: "form" }, title, description, requirement, sourceType, caseStudy,
            problems, submit));
    return section;
}

export interface DetailHandlers {
    onTransition: (id: string, action: string) => void;
    onSave: (id: string, patch: Record<string, unknown>) => void;
    onFetchSample: (id: string, distributionId?: string) => void;
}

export function renderRecordDetail(
    record: CatalogueRecord,
    session: Session,
    denied: Set<string>,
    handlers: DetailHandlers,
    sample?: string,
): HTMLElement {
    const actions = legalActions(record, session)
        .filter((action) => !denied.has(`${record.id}:${action}`));
    const buttons = actions.map((action) => {
        const button = el("button", { class: "transition", "data-action": action }, action);
        button.addEventListener("click", () => handlers.onTransition(record.id, action));
        return button;
    });

    const section = el("section", { class: "detail", "data-record-id": record.id },
        el("h2", {}, record.title, " ", statusBadge(record.status)),
        el("p", {}, record.description),
        el("dl", {},
            el("dt", {}, "kind"), el("dd", {}, record.kind),
            el("dt", {}, "publisher"), el("dd", {}, record.publisherOrg || "—"),
            el("dt", {}, "case study"), el("dd", {}, record.caseStudy || "—"),
            el("dt", {}, "data requirement"), el("dd", {}, record.dataRequirement),
            el("dt", {}, "source type"), el("dd", {}, record.sourceType),
            el("dt", {}, "owner"), el("dd", {}, record.owner),
            el("dt", {}, "modified"), el("dd", {}, record.modified)),
        el("div", { class: "actions", id: "actions" }, ...buttons));

    const distributions = el("ul", { class: "distributions" });
    for (const dist of record.distributions) {
        const fetchButton = el("button", { class: "sample", "data-dist": dist.id }, "fetch sample");
        fetchButton.addEventListener("click", () => handlers.onFetchSample(record.id, dist.id));
        distributions.append(el("li", {},
            `${dist.id} · ${dist.format} · ${dist.semanticsTag} `, fetchButton));
    }
    section.append(el("h3", {}, "Distributions"),
        record.distributions.length ? distributions : el("p", { class: "muted" }, "none"));
    if (sample !== undefined) {
        section.append(el("h3", {}, "Sample"), el("pre", { id: "sample" }, sample));
    }

    if (canEdit(record, session)) {
        const title = el("input", { id: "edit-title", value: record.title });
        const description = el("textarea", { id: "edit-description" }, record.description);
        const save = el("button", { id: "save" }, "Save metadata");
        save.addEventListener("click", () => {
            const patch = {
                title: (title as HTMLInputElement).value.trim(),
                description: (description as HTMLTextAreaElement).value.trim(),
            };
            const missing = missingMandatoryFields({ ...record, ...patch });
            if (missing.length === 0) handlers.onSave(record.id, patch);
        });
        section.append(el("h3", {}, "Edit metadata"),
            el("div", { class: "form" }, title, description, save));
    }
    return section;
}
