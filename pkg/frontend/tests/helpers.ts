// Shared test plumbing: recorded service fixtures and a mocked fetch.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { FetchLike } from "../src/api.js";
import { MapDocument } from "../src/types.js";

const fixturesDir = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture(name: string): unknown {
    return JSON.parse(readFileSync(join(fixturesDir, name), "utf-8"));
}

export function j1Level1Map(): MapDocument {
    return fixture("j1-l1-map.json") as MapDocument;
}

export interface RecordedCall {
    url: string;
}

/** A fetch double that serves canned bodies keyed by exact URL. */
export function mockService(routes: Record<string, unknown>): { fetch: FetchLike; calls: RecordedCall[] } {
    const calls: RecordedCall[] = [];
    const fetchImpl: FetchLike = (url) => {
        calls.push({ url });
        if (url in routes) {
            return Promise.resolve({
                ok: true,
                status: 200,
                json: () => Promise.resolve(routes[url]),
            });
        }
        return Promise.resolve({
            ok: false,
            status: 404,
            json: () => Promise.resolve({ error: `no route for ${url}` }),
        });
    };
    return { fetch: fetchImpl, calls };
}

export function appElements(): {
    map: Element;
    panel: Element;
    breadcrumb: Element;
    status: Element;
} {
    document.body.innerHTML =
        '<div id="map"></div><div id="panel"></div><div id="breadcrumb"></div><p id="status"></p>';
    return {
        map: document.getElementById("map")!,
        panel: document.getElementById("panel")!,
        breadcrumb: document.getElementById("breadcrumb")!,
        status: document.getElementById("status")!,
    };
}
