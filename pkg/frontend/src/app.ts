// Application wiring: load the map, handle move buttons and node clicks,
// keep the view in sync with the ViewState.

import { ApiClient, ApiError } from "./api.js";
import { renderBreadcrumb, renderMovePanel } from "./panel.js";
import { renderError, renderMap } from "./render.js";
import { ViewState } from "./state.js";
import { MapNode, MoveEntry, MoveKind } from "./types.js";

export interface AppElements {
    map: Element;
    panel: Element;
    breadcrumb: Element;
    status: Element;
}

type PairMove = "compromise-with" | "commonality-with";

export class NavigatorApp {
    readonly state = new ViewState();
    private level = 1;
    private pendingPair: PairMove | null = null;

    constructor(
        private readonly api: ApiClient,
        private readonly elements: AppElements,
    ) {}

    async start(level: number = 1): Promise<void> {
        this.level = level;
        try {
            const document = await this.api.map(level);
            this.state.loadDocument(document);
            this.redraw();
            this.setStatus(`loaded ${document.meta.journal} at level ${document.meta.level}`);
        } catch (error) {
            renderError(this.elements.map, this.describe(error));
        }
    }

    private describe(error: unknown): string {
        if (error instanceof ApiError) return error.message;
        return error instanceof Error ? error.message : String(error);
    }

    private setStatus(message: string): void {
        this.elements.status.textContent = message;
    }

    private redraw(): void {
        const document = this.state.document;
        if (document === null) return;
        renderMap(this.elements.map, document, {
            currentConcept: this.state.currentConcept,
            highlighted: this.state.highlightedConcepts,
            onSelect: (node) => void this.selectNode(node),
        });
        renderMovePanel(this.elements.panel, this.state.moveEntries, this.state.moveNotice, (entry) =>
            this.pickEntry(entry),
        );
        renderBreadcrumb(this.elements.breadcrumb, this.state.visitedArticles);
    }

    private async selectNode(node: MapNode): Promise<void> {
        if (this.pendingPair !== null) {
            const kind = this.pendingPair;
            this.pendingPair = null;
            await this.pairMove(kind, this.state.currentConcept, node.id);
            return;
        }
        this.state.selectConcept(node.id);
        this.state.clearMoveResults();
        this.redraw();
        this.setStatus(`concept ${node.id}: {${node.intent.join(", ")}}`);
    }

    async performMove(kind: MoveKind): Promise<void> {
        const sequence = this.api.nextSequence();
        try {
            const result = await this.api.navigate(this.state.currentConcept, kind, this.level);
            if (!this.api.isCurrent(sequence)) return; // a newer action superseded this one
            this.state.showMoveResults(result.entries, result.notice);
            this.redraw();
            this.setStatus(`${kind}: ${result.entries.length} candidate article(s)`);
        } catch (error) {
            this.setStatus(this.describe(error));
        }
    }

    /** Arm a two-concept move; the next node click supplies the partner. */
    armPairMove(kind: PairMove): void {
        this.pendingPair = kind;
        this.setStatus(`${kind}: click the second concept`);
    }

    private async pairMove(kind: PairMove, a: number, b: number): Promise<void> {
        const sequence = this.api.nextSequence();
        try {
            const node =
                kind === "compromise-with"
                    ? await this.api.meet(a, b, this.level)
                    : await this.api.join(a, b, this.level);
            if (!this.api.isCurrent(sequence)) return;
            const rationale = kind === "compromise-with" ? "compromise" : "commonality";
            const entries: MoveEntry[] = node.ownObjects.map((article) => ({
                article,
                concept: node.id,
                rationale,
            }));
            this.state.showMoveResults(entries, entries.length === 0 ? "no articles this way" : null);
            this.redraw();
        } catch (error) {
            this.setStatus(this.describe(error));
        }
    }

    pickEntry(entry: MoveEntry): void {
        this.state.visitArticle(entry.article, entry.concept);
        this.redraw();
        this.setStatus(`reading ${entry.article}`);
    }

    goBack(): void {
        if (this.state.back()) {
            this.redraw();
            this.setStatus("went back");
        }
    }

    async switchLevel(level: number): Promise<void> {
        await this.start(level);
    }
}
