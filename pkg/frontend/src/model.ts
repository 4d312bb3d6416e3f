// Client-side mirror of the governance rules. The server stays the
// authority; this only decides which controls are worth showing.

import type { CatalogueRecord, Session } from "./api.js";

// (status, action) -> guard, mirroring the server's transition table
export const TRANSITION_TABLE: Record<string, { action: string; guard: "owner" | "tmb" }[]> = {
    draft: [{ action: "submit", guard: "owner" }],
    submitted: [
        { action: "approve", guard: "tmb" },
        { action: "reject", guard: "tmb" },
    ],
    approved: [{ action: "deprecate", guard: "tmb" }],
    rejected: [{ action: "revise", guard: "owner" }],
    deprecated: [],
};

// same list the server enforces on create/update
export const MANDATORY_FIELDS = ["title", "description", "dataRequirement", "sourceType"] as const;

export function legalActions(record: CatalogueRecord, session: Session): string[] {
    const rows = TRANSITION_TABLE[record.status] ?? [];
    return rows
        .filter((row) =>
            row.guard === "owner"
                ? record.owner === session.userId
                : session.role === "tmb")
        .map((row) => row.action);
}

export function canEdit(record: CatalogueRecord, session: Session): boolean {
    return record.owner === session.userId
        && (record.status === "draft" || record.status === "approved");
}

export function missingMandatoryFields(draft: Record<string, unknown>): string[] {
    return MANDATORY_FIELDS.filter((field) => !draft[field]);
}
