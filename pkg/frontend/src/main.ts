// Application shell: session, hash routing, and API-driven re-rendering.
// The UI holds no governance state of its own: every view is rebuilt from
// a fresh API response after each mutation.

import { ApiError, GatewayClient } from "./api.js";
import type { SearchFilters, Session } from "./api.js";
import {
    renderCatalogue,
    renderHomepage,
    renderLogin,
    renderRecordDetail,
    renderWorkspace,
    el,
} from "./views.js";

const API_BASE = (window as unknown as { SEMFLOW_API?: string }).SEMFLOW_API
    ?? "http://127.0.0.1:8080";

interface AppState {
    client: GatewayClient;
    session: Session | null;
    filters: SearchFilters;
    // record:action pairs that came back 403; their buttons stay hidden
    denied: Set<string>;
    sample?: string;
}

const state: AppState = {
    client: new GatewayClient(API_BASE),
    session: null,
    filters: {},
    denied: new Set(),
};

function root(): HTMLElement {
    return document.getElementById("app")!;
}

function messageBar(): HTMLElement {
    let bar = document.getElementById("message");
    if (!bar) {
        bar = el("div", { id: "message", class: "message" });
        document.body.prepend(bar);
    }
    return bar;
}

function showError(error: unknown): void {
    // API errors are surfaced verbatim, status code included
    messageBar().textContent = error instanceof ApiError
        ? `error ${error.status}: ${error.detail}`
        : String(error);
}

function clearError(): void {
    messageBar().textContent = "";
}

function navigate(hash: string): void {
    window.location.hash = hash;
}

async function guardedTransition(id: string, action: string): Promise<void> {
    try {
        await state.client.transition(id, action);
        clearError();
    } catch (error) {
        showError(error);
        if (error instanceof ApiError && error.status === 403) {
            state.denied.add(`${id}:${action}`);
        }
    }
    await renderRoute(); // always re-fetch; never trust local state
}

async function renderRoute(): Promise<void> {
    const app = root();
    if (!state.session) {
        app.replaceChildren(renderLogin(async (token) => {
            state.client = new GatewayClient(API_BASE, token);
            try {
                state.session = await state.client.whoami();
                clearError();
                navigate("#/home");
                await renderRoute();
            } catch (error) {
                showError(error);
            }
        }));
        return;
    }

    const nav = el("nav", {},
        el("a", { href: "#/home" }, "Home"), " ",
        el("a", { href: "#/catalogue" }, "Catalogue"), " ",
        el("a", { href: "#/workspace" }, "Workspace"));

    const hash = window.location.hash || "#/home";
    try {
        if (hash.startsWith("#/record/")) {
            const id = hash.slice("#/record/".length);
            const record = await state.client.getRecord(id);
            app.replaceChildren(nav, renderRecordDetail(record, state.session, state.denied, {
                onTransition: guardedTransition,
                onSave: async (recordId, patch) => {
                    try {
                        await state.client.updateRecord(recordId, patch);
                        clearError();
                    } catch (error) {
                        showError(error);
                    }
                    await renderRoute();
                },
                onFetchSample: async (recordId, distributionId) => {
                    try {
                        const body = await state.client.fetchSample(recordId, distributionId);
                        state.sample = body.length > 2000 ? body.slice(0, 2000) + "…" : body;
                        clearError();
                    } catch (error) {
                        showError(error);
                        state.sample = undefined;
                    }
                    await renderRoute();
                },
            }, state.sample));
            return;
        }
        state.sample = undefined;

        if (hash.startsWith("#/catalogue")) {
            const [records, vocab, everything] = await Promise.all([
                state.client.searchRecords(state.filters),
                state.client.vocabularies(),
                state.client.searchRecords({}),
            ]);
            const formats = [...new Set(everything.flatMap(
                (record) => record.distributions.map((dist) => dist.format)))].sort();
            app.replaceChildren(nav, renderCatalogue(records, vocab, formats, state.filters, {
                onFilterChange: async (filters) => {
                    state.filters = filters;
                    await renderRoute();
                },
                onOpen: (id) => { navigate(`#/record/${id}`); },
            }));
            return;
        }

        if (hash.startsWith("#/workspace")) {
            const [records, vocab] = await Promise.all([
                state.client.searchRecords({}),
                state.client.vocabularies(),
            ]);
            const owned = records.filter((record) => record.owner === state.session!.userId);
            app.replaceChildren(nav, renderWorkspace(owned, vocab, state.session, {
                onOpen: (id) => { navigate(`#/record/${id}`); },
                onCreate: async (draft) => {
                    try {
                        const record = await state.client.createRecord(draft);
                        clearError();
                        navigate(`#/record/${record.id}`);
                    } catch (error) {
                        showError(error);
                        await renderRoute();
                    }
                },
            }));
            return;
        }

        // homepage: latest changes + search box
        const records = await state.client.searchRecords({});
        app.replaceChildren(nav, renderHomepage(records.slice(0, 5), (text) => {
            state.filters = { text: text || undefined };
            navigate("#/catalogue");
        }, (id) => navigate(`#/record/${id}`)));
    } catch (error) {
        showError(error);
    }
}

export function start(): void {
    window.addEventListener("hashchange", () => void renderRoute());
    void renderRoute();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
    start();
}
