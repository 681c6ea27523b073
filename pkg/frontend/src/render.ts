// SVG rendering of the layouted map. Positions come straight from the
// document's (rank, x); nothing lattice-related is computed here.

import { MapDocument, MapNode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderOptions {
    width?: number;
    rowHeight?: number;
    currentConcept?: number;
    highlighted?: readonly number[];
    onSelect?: (node: MapNode) => void;
}

function svgElement<K extends keyof SVGElementTagNameMap>(
    doc: Document,
    tag: K,
): SVGElementTagNameMap[K] {
    return doc.createElementNS(SVG_NS, tag);
}

export function renderError(container: Element, message: string): void {
    container.textContent = "";
    const banner = container.ownerDocument.createElement("div");
    banner.className = "error-banner";
    banner.setAttribute("role", "alert");
    banner.textContent = message;
    container.appendChild(banner);
}

export function renderMap(container: Element, map: MapDocument, options: RenderOptions = {}): void {
    const doc = container.ownerDocument;
    const width = options.width ?? 960;
    const rowHeight = options.rowHeight ?? 110;
    const marginX = 70;
    const marginY = 55;
    const maxRank = map.nodes.reduce((m, node) => Math.max(m, node.rank), 0);
    const height = marginY * 2 + maxRank * rowHeight;
    const highlighted = new Set(options.highlighted ?? []);

    const positions = new Map<number, { px: number; py: number }>();
    for (const node of map.nodes) {
        positions.set(node.id, {
            px: marginX + node.x * (width - 2 * marginX),
            py: marginY + node.rank * rowHeight,
        });
    }

    container.textContent = "";
    const svg = svgElement(doc, "svg");
    svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    svg.setAttribute("class", "lattice-map");

    const edgeLayer = svgElement(doc, "g");
    edgeLayer.setAttribute("class", "edges");
    for (const edge of map.edges) {
        const upper = positions.get(edge.upper);
        const lower = positions.get(edge.lower);
        if (!upper || !lower) continue;
        const line = svgElement(doc, "line");
        line.setAttribute("class", "edge");
        line.setAttribute("data-upper", String(edge.upper));
        line.setAttribute("data-lower", String(edge.lower));
        line.setAttribute("x1", String(upper.px));
        line.setAttribute("y1", String(upper.py));
        line.setAttribute("x2", String(lower.px));
        line.setAttribute("y2", String(lower.py));
        edgeLayer.appendChild(line);
    }
    svg.appendChild(edgeLayer);

    const nodeLayer = svgElement(doc, "g");
    nodeLayer.setAttribute("class", "nodes");
    for (const node of map.nodes) {
        const position = positions.get(node.id)!;
        const group = svgElement(doc, "g");
        const classes = ["node"];
        if (node.id === options.currentConcept) classes.push("current");
        if (highlighted.has(node.id)) classes.push("highlighted");
        group.setAttribute("class", classes.join(" "));
        group.setAttribute("data-node-id", String(node.id));

        const circle = svgElement(doc, "circle");
        circle.setAttribute("cx", String(position.px));
        circle.setAttribute("cy", String(position.py));
        circle.setAttribute("r", "11");
        group.appendChild(circle);

        if (node.ownAttributes.length > 0) {
            const label = svgElement(doc, "text");
            label.setAttribute("class", "attribute-label");
            label.setAttribute("x", String(position.px));
            label.setAttribute("y", String(position.py - 18));
            label.setAttribute("text-anchor", "middle");
            label.textContent = node.ownAttributes.join(", ");
            group.appendChild(label);
        }
        if (node.ownObjects.length > 0) {
            const label = svgElement(doc, "text");
            label.setAttribute("class", "article-label");
            label.setAttribute("x", String(position.px));
            label.setAttribute("y", String(position.py + 28));
            label.setAttribute("text-anchor", "middle");
            label.textContent = node.ownObjects.join(", ");
            group.appendChild(label);
        }
        if (options.onSelect) {
            group.addEventListener("click", () => options.onSelect!(node));
        }
        nodeLayer.appendChild(group);
    }
    svg.appendChild(nodeLayer);
    container.appendChild(svg);
}
