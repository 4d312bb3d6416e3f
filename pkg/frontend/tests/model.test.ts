// Role-gated controls: the actions the UI offers must equal the legal-action
// set of the governance state machine for every (status, role, ownership)
// combination. The expected table here is written out independently rather
// than derived from the implementation.

import { describe, expect, it } from "vitest";

import type { CatalogueRecord, Session } from "../src/api.js";
import { canEdit, legalActions, missingMandatoryFields } from "../src/model.js";

const STATUSES = ["draft", "submitted", "approved", "rejected", "deprecated"] as const;

function record(status: string, owner = "alice"): CatalogueRecord {
    return {
        id: "rec-1", kind: "dataset", title: "T", description: "D",
        publisherOrg: "", caseStudy: "Rennes",
        dataRequirement: "Road Traffic Measurements", sourceType: "real-time-feed",
        status, owner, created: "", modified: "", distributions: [],
    };
}

// (status, role, isOwner) -> expected visible actions
function expected(status: string, role: string, isOwner: boolean): string[] {
    if (status === "draft") return isOwner ? ["submit"] : [];
    if (status === "submitted") return role === "tmb" ? ["approve", "reject"] : [];
    if (status === "approved") return role === "tmb" ? ["deprecate"] : [];
    if (status === "rejected") return isOwner ? ["revise"] : [];
    return []; // deprecated is terminal
}

describe("legalActions", () => {
    const sessions: Session[] = [
        { userId: "alice", role: "publisher" },
        { userId: "bob", role: "publisher" },
        { userId: "theo", role: "tmb" },
        { userId: "uma", role: "user" },
    ];

    it("matches the state machine for every status/role/ownership combination", () => {
        for (const status of STATUSES) {
            for (const session of sessions) {
                const rec = record(status, "alice");
                const got = legalActions(rec, session).sort();
                const want = expected(status, session.role, session.userId === "alice").sort();
                expect(got, `${status} as ${session.userId}/${session.role}`).toEqual(want);
            }
        }
    });

    it("hides approve from publishers on submitted records", () => {
        expect(legalActions(record("submitted"), { userId: "alice", role: "publisher" }))
            .toEqual([]);
    });

    it("a tmb member who owns a record can both submit and review it", () => {
        const rec = record("draft", "theo");
        expect(legalActions(rec, { userId: "theo", role: "tmb" })).toEqual(["submit"]);
    });
});

describe("canEdit", () => {
    it("owner edits drafts and approved records only", () => {
        const alice: Session = { userId: "alice", role: "publisher" };
        expect(canEdit(record("draft"), alice)).toBe(true);
        expect(canEdit(record("approved"), alice)).toBe(true);
        expect(canEdit(record("submitted"), alice)).toBe(false);
        expect(canEdit(record("draft", "bob"), alice)).toBe(false);
    });
});

describe("missingMandatoryFields", () => {
    it("mirrors the server's mandatory list", () => {
        expect(missingMandatoryFields({})).toEqual(
            ["title", "description", "dataRequirement", "sourceType"]);
        expect(missingMandatoryFields({
            title: "T", description: "D",
            dataRequirement: "Road Traffic Measurements", sourceType: "real-time-feed",
        })).toEqual([]);
    });
});
