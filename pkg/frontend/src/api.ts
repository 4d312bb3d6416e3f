// Typed client for the gateway's Catalogue API and Data API.

export interface Distribution {
    id: string;
    format: string;
    semanticsTag: string;
    accessUrl: string;
}

export interface CatalogueRecord {
    id: string;
    kind: "dataset" | "dataService";
    title: string;
    description: string;
    publisherOrg: string;
    caseStudy: string;
    dataRequirement: string;
    sourceType: string;
    status: string;
    owner: string;
    created: string;
    modified: string;
    refreshPeriodSeconds?: number;
    endpointUrl?: string;
    distributions: Distribution[];
}

export interface Vocabularies {
    status: string[];
    dataRequirement: string[];
    sourceType: string[];
}

export interface Session {
    userId: string;
    role: "publisher" | "tmb" | "user";
}

export interface SearchFilters {
    text?: string;
    status?: string;
    dataRequirement?: string;
    sourceType?: string;
    caseStudy?: string;
    format?: string;
}

export type RecordDraft = Partial<CatalogueRecord> & { distributions?: Distribution[] };

export class ApiError extends Error {
    constructor(public status: number, public detail: string) {
        super(`${status}: ${detail}`);
    }
}

async function parseError(response: Response): Promise<ApiError> {
    let detail = response.statusText;
    try {
        const body = await response.json();
        if (body && typeof body.detail === "string") detail = body.detail;
        else detail = JSON.stringify(body);
    } catch {
        // keep statusText
    }
    return new ApiError(response.status, detail);
}

export class GatewayClient {
    constructor(public baseUrl: string, public token: string | null = null) {}

    private headers(json = false): Record<string, string> {
        const headers: Record<string, string> = {};
        if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
        if (json) headers["Content-Type"] = "application/json";
        return headers;
    }

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const response = await fetch(this.baseUrl + path, {
            method,
            headers: this.headers(body !== undefined),
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        if (!response.ok) throw await parseError(response);
        return (await response.json()) as T;
    }

    whoami(): Promise<Session> {
        return this.request<Session>("GET", "/catalogue/whoami");
    }

    vocabularies(): Promise<Vocabularies> {
        return this.request<Vocabularies>("GET", "/catalogue/vocabularies");
    }

    searchRecords(filters: SearchFilters = {}): Promise<CatalogueRecord[]> {
        const params = new URLSearchParams();
        for (const [key, value] of Object.entries(filters)) {
            if (value !== undefined && value !== "") params.set(key, value);
        }
        const query = params.toString();
        return this.request<CatalogueRecord[]>(
            "GET", "/catalogue/records" + (query ? `?${query}` : ""));
    }

    getRecord(id: string): Promise<CatalogueRecord> {
        return this.request<CatalogueRecord>("GET", `/catalogue/records/${id}`);
    }

    createRecord(draft: RecordDraft): Promise<CatalogueRecord> {
        return this.request<CatalogueRecord>("POST", "/catalogue/records", draft);
    }

    updateRecord(id: string, patch: RecordDraft): Promise<CatalogueRecord> {
        return this.request<CatalogueRecord>("PATCH", `/catalogue/records/${id}`, patch);
    }

    transition(id: string, action: string): Promise<CatalogueRecord> {
        return this.request<CatalogueRecord>(
            "POST", `/catalogue/records/${id}/transition`, { action });
    }

    /** Fetch a data sample through the Data API; returns the body text. */
    async fetchSample(id: string, distributionId?: string): Promise<string> {
        const query = distributionId ? `?distribution=${encodeURIComponent(distributionId)}` : "";
        const response = await fetch(`${this.baseUrl}/data/${id}${query}`, {
            headers: this.headers(),
        });
        if (!response.ok) throw await parseError(response);
        return await response.text();
    }
}
