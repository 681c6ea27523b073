import { describe, expect, it } from "vitest";

import { renderError, renderMap } from "../src/render.js";
import { j1Level1Map } from "./helpers.js";

describe("renderMap", () => {
    it("draws five nodes and five edges for the journal-1 level-1 map", () => {
        const container = document.createElement("div");
        renderMap(container, j1Level1Map());
        expect(container.querySelectorAll("g.node")).toHaveLength(5);
        expect(container.querySelectorAll("line.edge")).toHaveLength(5);
    });

    it("draws a single node and no edges for a one-concept document", () => {
        const container = document.createElement("div");
        const map = j1Level1Map();
        map.nodes = [map.nodes[0]!];
        map.edges = [];
        renderMap(container, map);
        expect(container.querySelectorAll("g.node")).toHaveLength(1);
        expect(container.querySelectorAll("line.edge")).toHaveLength(0);
    });

    it("positions nodes by rank: every edge points downwards", () => {
        const container = document.createElement("div");
        renderMap(container, j1Level1Map());
        for (const line of container.querySelectorAll("line.edge")) {
            expect(Number(line.getAttribute("y2"))).toBeGreaterThan(Number(line.getAttribute("y1")));
        }
    });

    it("shows reduced labels: own attributes above, own articles below", () => {
        const container = document.createElement("div");
        renderMap(container, j1Level1Map());
        const labelled = container.querySelectorAll("text.attribute-label");
        expect(labelled.length).toBeGreaterThan(0);
        for (const label of labelled) {
            const group = label.parentElement!;
            const circle = group.querySelector("circle")!;
            expect(Number(label.getAttribute("y"))).toBeLessThan(Number(circle.getAttribute("cy")));
        }
        for (const label of container.querySelectorAll("text.article-label")) {
            const circle = label.parentElement!.querySelector("circle")!;
            expect(Number(label.getAttribute("y"))).toBeGreaterThan(Number(circle.getAttribute("cy")));
        }
    });

    it("marks the current concept", () => {
        const container = document.createElement("div");
        renderMap(container, j1Level1Map(), { currentConcept: 2 });
        expect(container.querySelector('g[data-node-id="2"]')!.getAttribute("class")).toContain("current");
    });

    it("renderError shows a banner", () => {
        const container = document.createElement("div");
        renderError(container, "map document invalid: missing nodes");
        const banner = container.querySelector(".error-banner")!;
        expect(banner.textContent).toContain("missing nodes");
    });
});
