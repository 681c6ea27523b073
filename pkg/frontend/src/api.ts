// Thin client for the read-only map service. All lattice work happens on the
// server; this only fetches, validates, and drops stale responses.

import {
    MapDocument,
    MapNode,
    MoveKind,
    MoveResponse,
    validateMapDocument,
    validateMoveResponse,
    validateNode,
} from "./types.js";

export type FetchLike = (url: string) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
    constructor(message: string, readonly status?: number) {
        super(message);
    }
}

export class ApiClient {
    private sequence = 0;

    constructor(
        private readonly base: string = "",
        private readonly fetchImpl: FetchLike = (url) => fetch(url),
    ) {}

    private async request(path: string): Promise<unknown> {
        const response = await this.fetchImpl(this.base + path);
        const body = await response.json().catch(() => null);
        if (!response.ok) {
            const detail = body && typeof body === "object" && "error" in body ? String((body as Record<string, unknown>)["error"]) : `status ${response.status}`;
            throw new ApiError(detail, response.status);
        }
        return body;
    }

    /** Tag for the most recent user action; stale responses are discarded. */
    nextSequence(): number {
        this.sequence += 1;
        return this.sequence;
    }

    isCurrent(sequence: number): boolean {
        return sequence === this.sequence;
    }

    async map(level: number): Promise<MapDocument> {
        const body = await this.request(`/api/map?level=${level}`);
        const errors = validateMapDocument(body);
        if (errors.length > 0) throw new ApiError(`map document invalid: ${errors.join("; ")}`);
        return body as unknown as MapDocument;
    }

    async navigate(conceptId: number, move: MoveKind, level: number): Promise<MoveResponse> {
        const body = await this.request(`/api/navigate/${conceptId}?move=${move}&level=${level}`);
        const errors = validateMoveResponse(body);
        if (errors.length > 0) throw new ApiError(`move response invalid: ${errors.join("; ")}`);
        return body as unknown as MoveResponse;
    }

    private async nodeRequest(path: string): Promise<MapNode> {
        const body = await this.request(path);
        const errors = validateNode(body);
        if (errors.length > 0) throw new ApiError(`node response invalid: ${errors.join("; ")}`);
        return body as unknown as MapNode;
    }

    meet(a: number, b: number, level: number): Promise<MapNode> {
        return this.nodeRequest(`/api/meet?a=${a}&b=${b}&level=${level}`);
    }

    join(a: number, b: number, level: number): Promise<MapNode> {
        return this.nodeRequest(`/api/join?a=${a}&b=${b}&level=${level}`);
    }
}
