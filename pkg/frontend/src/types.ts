// Map-document and API schema, mirrored from the service, plus validators
// used both by the app (error banners) and the contract tests.

export interface MapMetrics {
    objects: number;
    attributes: number;
    incidence: number;
    density: number;
    concepts: number;
    width: number;
    depth: number;
    dimension: number | string;
}

export interface MapMeta {
    journal: string;
    level: number;
    conventions: string[];
    metrics: MapMetrics;
}

export interface MapNode {
    id: number;
    intent: string[];
    extent: string[];
    ownAttributes: string[];
    ownObjects: string[];
    rank: number;
    x: number;
}

export interface MapEdge {
    upper: number;
    lower: number;
}

export interface MapFactor {
    sequence: string[][];
    support: { covered: number; total: number };
}

export interface MapDocument {
    meta: MapMeta;
    nodes: MapNode[];
    edges: MapEdge[];
    factors: MapFactor[];
}

export type MoveKind = "specialize" | "generalize" | "contrast" | "complement";

export interface MoveEntry {
    article: string;
    concept: number;
    rationale: string;
}

export interface MoveResponse {
    move: string;
    entries: MoveEntry[];
    notice: string | null;
}

function isRecord(value: unknown): value is Record<string, unknown> {
    return typeof value === "object" && value !== null && !Array.isArray(value);
}

function isStringArray(value: unknown): value is string[] {
    return Array.isArray(value) && value.every((v) => typeof v === "string");
}

export function validateMapDocument(value: unknown): string[] {
    const errors: string[] = [];
    if (!isRecord(value)) return ["document is not an object"];
    const meta = value["meta"];
    if (!isRecord(meta)) {
        errors.push("missing meta");
    } else {
        if (typeof meta["journal"] !== "string") errors.push("meta.journal must be a string");
        if (typeof meta["level"] !== "number") errors.push("meta.level must be a number");
        if (!isStringArray(meta["conventions"])) errors.push("meta.conventions must be strings");
        if (!isRecord(meta["metrics"])) errors.push("missing meta.metrics");
    }
    const nodes = value["nodes"];
    if (!Array.isArray(nodes)) {
        errors.push("missing nodes");
    } else {
        nodes.forEach((node, i) => {
            if (!isRecord(node)) {
                errors.push(`nodes[${i}] is not an object`);
                return;
            }
            if (typeof node["id"] !== "number") errors.push(`nodes[${i}].id must be a number`);
            if (!isStringArray(node["intent"])) errors.push(`nodes[${i}].intent must be strings`);
            if (!isStringArray(node["extent"])) errors.push(`nodes[${i}].extent must be strings`);
            if (!isStringArray(node["ownAttributes"])) errors.push(`nodes[${i}].ownAttributes must be strings`);
            if (!isStringArray(node["ownObjects"])) errors.push(`nodes[${i}].ownObjects must be strings`);
            if (typeof node["rank"] !== "number") errors.push(`nodes[${i}].rank must be a number`);
            if (typeof node["x"] !== "number") errors.push(`nodes[${i}].x must be a number`);
        });
    }
    const edges = value["edges"];
    if (!Array.isArray(edges)) {
        errors.push("missing edges");
    } else {
        edges.forEach((edge, i) => {
            if (!isRecord(edge) || typeof edge["upper"] !== "number" || typeof edge["lower"] !== "number") {
                errors.push(`edges[${i}] must have numeric upper and lower`);
            }
        });
    }
    if (!Array.isArray(value["factors"])) errors.push("missing factors");
    return errors;
}

export function validateMoveResponse(value: unknown): string[] {
    const errors: string[] = [];
    if (!isRecord(value)) return ["response is not an object"];
    if (typeof value["move"] !== "string") errors.push("move must be a string");
    if (value["notice"] !== null && typeof value["notice"] !== "string") {
        errors.push("notice must be a string or null");
    }
    const entries = value["entries"];
    if (!Array.isArray(entries)) {
        errors.push("missing entries");
    } else {
        entries.forEach((entry, i) => {
            if (
                !isRecord(entry) ||
                typeof entry["article"] !== "string" ||
                typeof entry["concept"] !== "number" ||
                typeof entry["rationale"] !== "string"
            ) {
                errors.push(`entries[${i}] must be {article, concept, rationale}`);
            }
        });
    }
    return errors;
}

export function validateNode(value: unknown): string[] {
    const probe = { meta: { journal: "", level: 0, conventions: [], metrics: {} }, nodes: [value], edges: [], factors: [] };
    return validateMapDocument(probe).filter((e) => e.startsWith("nodes[0]"));
}
