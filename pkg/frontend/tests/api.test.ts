// GatewayClient request construction, checked against a stubbed fetch.

import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, GatewayClient } from "../src/api.js";

function stubFetch(status = 200, body: unknown = []) {
    const stub = vi.fn(async () => new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
    }));
    vi.stubGlobal("fetch", stub);
    return stub;
}

afterEach(() => vi.unstubAllGlobals());

describe("GatewayClient", () => {
    it("builds search query strings and sends the bearer token", async () => {
        const stub = stubFetch();
        const client = new GatewayClient("http://gw", "tok-x");
        await client.searchRecords({ status: "approved", caseStudy: "Rennes", text: "" });
        const [url, init] = stub.mock.calls[0] as [string, RequestInit];
        expect(url).toBe("http://gw/catalogue/records?status=approved&caseStudy=Rennes");
        expect((init.headers as Record<string, string>)["Authorization"]).toBe("Bearer tok-x");
    });

    it("omits the auth header without a token", async () => {
        const stub = stubFetch();
        await new GatewayClient("http://gw").searchRecords();
        const [url, init] = stub.mock.calls[0] as [string, RequestInit];
        expect(url).toBe("http://gw/catalogue/records");
        expect(init.headers).not.toHaveProperty("Authorization");
    });

    it("posts transitions as JSON", async () => {
        const stub = stubFetch(200, { id: "rec-1", status: "submitted" });
        await new GatewayClient("http://gw", "t").transition("rec-1", "submit");
        const [url, init] = stub.mock.calls[0] as [string, RequestInit];
        expect(url).toBe("http://gw/catalogue/records/rec-1/transition");
        expect(init.method).toBe("POST");
        expect(JSON.parse(init.body as string)).toEqual({ action: "submit" });
    });

    it("surfaces API errors verbatim with the status code", async () => {
        stubFetch(403, { error: "Forbidden", detail: "only the record owner may submit" });
        const client = new GatewayClient("http://gw", "t");
        const error = await client.transition("rec-1", "submit").catch((e) => e);
        expect(error).toBeInstanceOf(ApiError);
        expect(error.status).toBe(403);
        expect(error.detail).toBe("only the record owner may submit");
    });
});
